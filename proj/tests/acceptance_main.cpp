#include "magbound/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<int> ids;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "-v") verbose = true;
        else ids.push_back(std::atoi(a.c_str()));
    }
    int failed = 0;
    magbound::run_acceptance(ids, [&](const magbound::CriterionResult& r) {
        std::printf("%s\n", magbound::format_result_line(r).c_str());
        if (verbose || !r.pass())
            for (const auto& d : r.details) std::printf("      %s\n", d.c_str());
        std::fflush(stdout);
        failed += !r.pass();
    });
    return failed == 0 ? 0 : 1;
}
