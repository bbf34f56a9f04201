// One line per acceptance criterion; details for failures. Tolerances live in src/suite.cpp.
#include <cstring>
#include <iostream>

#include "conekit/suite.hpp"

using namespace conekit;

int main(int argc, char** argv) {
    SuiteOptions opt;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
    bool ok = true;
    for (int id = 1; id <= 9; ++id) {
        const auto r = run_criterion(id, opt);
        std::cout << criterion_line(r) << std::endl;
        if (r.skipped) continue;
        if (!r.pass()) {
            ok = false;
            if (!r.error.empty()) std::cout << "  error: " << r.error << "\n";
            for (const auto& c : r.report.records())
                if (!c.pass) std::cout << "  " << c.name << ": expected " << c.expected.dump() << ", computed "
                                       << c.computed.dump() << "\n";
        }
    }
    std::cout << (ok ? "acceptance: PASS" : "acceptance: FAIL") << std::endl;
    return ok ? 0 : 1;
}
