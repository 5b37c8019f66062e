// Wall-clock comparison of the OpenMP kernels against their serial reference
// twins.  Each kernel pair must produce identical results; the benchmark
// asserts that equality along the way, so it doubles as a stress check.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "ksurf/coset.hpp"
#include "ksurf/exact.hpp"
#include "ksurf/fpgroup.hpp"
#include "ksurf/obstruct.hpp"
#include "ksurf/parallel.hpp"
#include "ksurf/pretzel.hpp"

using namespace ksurf;

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Row {
    const char* name;
    double serial = 0;
    double parallel = 0;
    bool equal = false;
};

void print_row(const Row& r) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   results %s\n",
                r.name, r.serial, r.parallel,
                r.parallel > 0 ? r.serial / r.parallel : 0.0,
                r.equal ? "equal" : "DIFFER");
}

Row bench_snf() {
    std::mt19937 rng(4242);
    exact::IntMatrix m(60, 60);
    for (std::size_t i = 0; i < 60; ++i)
        for (std::size_t j = 0; j < 60; ++j)
            m(i, j) = static_cast<long>(rng() % 41) - 20;

    Row r{"smith normal form 60x60"};
    double t = now();
    const auto serial = exact::smith_normal_form_serial(m);
    r.serial = now() - t;
    t = now();
    const auto par = exact::smith_normal_form(m);
    r.parallel = now() - t;
    r.equal = serial == par;
    return r;
}

Row bench_sweep() {
    Row r{"pretzel crosscheck [-7,7]"};
    double t = now();
    const auto serial = pretzel::crosscheck_sweep_serial(-7, 7);
    r.serial = now() - t;
    t = now();
    const auto par = pretzel::crosscheck_sweep(-7, 7);
    r.parallel = now() - t;
    r.equal = serial == par && serial.mismatches == 0;
    return r;
}

Row bench_theorem() {
    const auto s = obstruct::corollary_surface(2, true);
    Row r{"theorem case sweep to 60"};
    double t = now();
    const auto serial = obstruct::check_theorem_serial(s, 60);
    r.serial = now() - t;
    t = now();
    const auto par = obstruct::check_theorem(s, 60);
    r.parallel = now() - t;
    r.equal = serial.trace == par.trace &&
              par.conclusion == obstruct::Conclusion::StablyIrreducible;
    return r;
}

Row bench_schreier() {
    const fp::Presentation p = fp::parse_presentation("<x, y | x^2, y^3, (x*y)^7>");
    const std::vector<fp::Perm> images{fp::Perm({1, 0, 3, 2, 5, 4, 7, 6}),
                                       fp::Perm({0, 2, 4, 3, 1, 6, 7, 5})};
    const auto table = fp::coset_table_from_quotient(fp::FiniteQuotient{p, images});
    if (!table) {
        std::fprintf(stderr, "regular action table unavailable\n");
        std::exit(1);
    }
    Row r{"reidemeister-schreier x168"};
    double t = now();
    const auto serial = fp::reidemeister_schreier_serial(p, *table);
    r.serial = now() - t;
    t = now();
    const auto par = fp::reidemeister_schreier(p, *table);
    r.parallel = now() - t;
    r.equal = serial.relators == par.relators &&
              serial.generator_count == par.generator_count;
    return r;
}

}  // namespace

int main() {
    std::printf("threads: %d\n", max_threads());
    bool all_equal = true;
    for (const Row& r : {bench_snf(), bench_sweep(), bench_theorem(), bench_schreier()}) {
        print_row(r);
        all_equal = all_equal && r.equal;
    }
    if (!all_equal) {
        std::printf("kernel outputs differ between serial and parallel paths\n");
        return 1;
    }
    return 0;
}
