#include <cstdio>

int main() {
    std::fprintf(stderr, "solsurf: command-line driver not wired up yet\n");
    return 1;
}
