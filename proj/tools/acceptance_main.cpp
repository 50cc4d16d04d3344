// Prints one pass/fail line per acceptance criterion. With an argument, runs
// only that criterion; the exit status is nonzero when any run criterion fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "smoothpoly/acceptance.hpp"

using namespace smoothpoly::acceptance;

int main(int argc, char** argv)
{
    unsigned threads = 1;
    if (const char* env = std::getenv("SMOOTHPOLY_THREADS")) threads = static_cast<unsigned>(std::max(1, std::atoi(env)));
    int first = 1, last = kCriteria;
    if (argc > 1) first = last = std::atoi(argv[1]);
    if (first < 1 || last > kCriteria) {
        std::cerr << "usage: acceptance [criterion 1-" << kCriteria << "]\n";
        return 2;
    }
    bool all = true;
    for (int id = first; id <= last; ++id) {
        const auto r = run_criterion(id, threads);
        all = all && r.pass;
        std::cout << "criterion " << id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << "  "
                  << smoothpoly::dump12(r.metrics) << std::endl;
    }
    return all ? 0 : 1;
}
