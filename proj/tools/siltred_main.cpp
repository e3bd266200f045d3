#include <cstdio>

int main() {
    std::puts("siltred: command-line interface under construction");
    return 0;
}
