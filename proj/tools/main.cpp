#include <cstdio>

int main() {
    std::puts("cyode: command-line interface not wired up yet");
    return 2;
}
