#pragma once

#include <vector>

#include "torweyl/matrix.hpp"

namespace torweyl {

// Inclusive per-coordinate bounds of an integer box.  A coordinate with
// hi < lo makes the box empty.
struct Box {
    std::vector<long long> lo;
    std::vector<long long> hi;
};

// Lattice-point budget for a single scan; reads TORWEYL_MAX_BOX (default
// 1'000'000) on every call so tests can adjust it.
unsigned long long max_box_points();

// Number of points in the box; throws BoxTooLarge above the budget.
unsigned long long box_point_count(const Box& box);

// A linear system over the box: equations a*x == rhs plus optional row-wise
// congruences (m*x - c)_i == 0 mod d_i.  Either part may be empty.
struct CongruenceSystem {
    IntMatrix a;
    IntVec rhs;
    IntMatrix m;
    IntVec c;
    IntVec d;
};

CongruenceSystem equations_only(IntMatrix a, IntVec rhs);

// All solutions in the box, in lexicographic order (first coordinate most
// significant).  The serial routine is the reference implementation; the
// parallel one splits the flat index range over OpenMP threads and must
// return the identical vector.  The undecorated names dispatch by box size.
std::vector<std::vector<long long>> scan_solutions_serial(const CongruenceSystem& sys,
                                                          const Box& box);
std::vector<std::vector<long long>> scan_solutions_parallel(const CongruenceSystem& sys,
                                                            const Box& box);
std::vector<std::vector<long long>> scan_solutions(const CongruenceSystem& sys, const Box& box);

unsigned long long scan_count_serial(const CongruenceSystem& sys, const Box& box);
unsigned long long scan_count_parallel(const CongruenceSystem& sys, const Box& box);
unsigned long long scan_count(const CongruenceSystem& sys, const Box& box);

}  // namespace torweyl
