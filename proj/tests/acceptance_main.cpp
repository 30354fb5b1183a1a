#include <cstdio>
#include <iostream>

#include "ilw/acceptance.hpp"

int main() {
    const auto results = ilw::acceptance::run_all(&std::cout);
    int passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    std::printf("%d/%zu criteria passed\n", passed, results.size());
    return ilw::acceptance::all_pass(results) ? 0 : 1;
}
