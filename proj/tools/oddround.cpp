// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>

int main() { std::puts("oddround: not wired up yet"); return 64; }
