#include <cstdio>
int main() { std::puts("cli test placeholder"); return 0; }
