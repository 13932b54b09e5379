// Compares the serial reference box-scan kernels against the OpenMP-parallel
// ones on a family of growing congruence systems, verifying that both return
// identical results while timing them.

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "torweyl/boxscan.hpp"
#include "torweyl/errors.hpp"

using namespace torweyl;

namespace {

template <typename F>
double time_call(F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) try {
    long long size = argc > 1 ? std::atoll(argv[1]) : 60;
    if (size < 4) size = 4;

    // One equation plus one congruence over a 3-dimensional box: the scan
    // touches (size+1)^2 * (2 size+1) points.
    CongruenceSystem sys;
    sys.a = IntMatrix{{1, -1, 2}};
    sys.rhs = IntVec{Int(0)};
    sys.m = IntMatrix{{1, 1, 0}};
    sys.c = IntVec{Int(1)};
    sys.d = IntVec{Int(3)};

    Box box;
    box.lo = {0, 0, -size};
    box.hi = {size, size, size};

#ifdef _OPENMP
    std::cout << "OpenMP enabled, max threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP not enabled; parallel kernels fall back to serial loops\n";
#endif
    std::cout << "box points: " << box_point_count(box) << "\n";

    unsigned long long count_serial = 0, count_parallel = 0;
    std::vector<std::vector<long long>> sol_serial, sol_parallel;

    double t_count_serial = time_call([&] { count_serial = scan_count_serial(sys, box); });
    double t_count_parallel = time_call([&] { count_parallel = scan_count_parallel(sys, box); });
    double t_solve_serial = time_call([&] { sol_serial = scan_solutions_serial(sys, box); });
    double t_solve_parallel = time_call([&] { sol_parallel = scan_solutions_parallel(sys, box); });

    std::cout << "count: serial " << t_count_serial << "s, parallel " << t_count_parallel
              << "s  (result " << count_serial << ")\n";
    std::cout << "solutions: serial " << t_solve_serial << "s, parallel " << t_solve_parallel
              << "s  (result " << sol_serial.size() << " vectors)\n";

    if (count_serial != count_parallel || sol_serial != sol_parallel ||
        sol_serial.size() != count_serial) {
        std::cerr << "MISMATCH between serial and parallel kernels\n";
        return 1;
    }
    std::cout << "serial and parallel kernels agree\n";
    return 0;
} catch (const Error& e) {
    std::cerr << "error: " << e.what() << " (raise TORWEYL_MAX_BOX for larger sizes)\n";
    return 1;
}
