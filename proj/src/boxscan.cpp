#include "torweyl/boxscan.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "torweyl/errors.hpp"

namespace torweyl {

unsigned long long max_box_points() {
    const char* env = std::getenv("TORWEYL_MAX_BOX");
    if (env && *env) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1'000'000ULL;
}

unsigned long long box_point_count(const Box& box) {
    if (box.lo.size() != box.hi.size()) throw ShapeMismatch("box bound lengths differ");
    const unsigned long long budget = max_box_points();
    unsigned long long count = 1;
    for (std::size_t j = 0; j < box.lo.size(); ++j) {
        if (box.hi[j] < box.lo[j]) return 0;
        unsigned long long w = static_cast<unsigned long long>(box.hi[j] - box.lo[j]) + 1;
        // count * w > budget, tested without overflowing (count stays <= budget).
        if (w == 0 || count > budget / w)
            throw BoxTooLarge("box exceeds the lattice-point budget of " +
                              std::to_string(budget) + " points");
        count *= w;
    }
    return count;
}

CongruenceSystem equations_only(IntMatrix a, IntVec rhs) {
    CongruenceSystem sys;
    sys.a = std::move(a);
    sys.rhs = std::move(rhs);
    sys.m = IntMatrix(0, sys.a.cols());
    return sys;
}

namespace {

void validate(const CongruenceSystem& sys, const Box& box) {
    const std::size_t n = box.lo.size();
    if (box.hi.size() != n) throw ShapeMismatch("box bound lengths differ");
    if (sys.a.cols() != n || sys.m.cols() != n)
        throw ShapeMismatch("scan system width does not match the box");
    if (sys.rhs.size() != sys.a.rows() || sys.c.size() != sys.m.rows() ||
        sys.d.size() != sys.m.rows())
        throw ShapeMismatch("scan system row counts disagree");
    for (const Int& di : sys.d)
        if (di == 0) throw ShapeMismatch("zero modulus in congruence system");
}

// Decode a flat index into box coordinates, first coordinate most
// significant, so ascending flat order is ascending lexicographic order.
std::vector<long long> decode(const Box& box, unsigned long long idx) {
    const std::size_t n = box.lo.size();
    std::vector<long long> x(n);
    for (std::size_t j = n; j-- > 0;) {
        unsigned long long w = static_cast<unsigned long long>(box.hi[j] - box.lo[j]) + 1;
        x[j] = box.lo[j] + static_cast<long long>(idx % w);
        idx /= w;
    }
    return x;
}

struct Accumulator {
    IntVec eq;    // current a*x
    IntVec cong;  // current m*x
};

Accumulator init_accumulator(const CongruenceSystem& sys, const std::vector<long long>& x) {
    Accumulator acc;
    acc.eq.assign(sys.a.rows(), Int(0));
    acc.cong.assign(sys.m.rows(), Int(0));
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] == 0) continue;
        Int xi = to_int(x[j]);
        for (std::size_t i = 0; i < sys.a.rows(); ++i) acc.eq[i] += sys.a.at(i, j) * xi;
        for (std::size_t i = 0; i < sys.m.rows(); ++i) acc.cong[i] += sys.m.at(i, j) * xi;
    }
    return acc;
}

bool satisfied(const CongruenceSystem& sys, const Accumulator& acc) {
    for (std::size_t i = 0; i < sys.a.rows(); ++i)
        if (acc.eq[i] != sys.rhs[i]) return false;
    for (std::size_t i = 0; i < sys.m.rows(); ++i) {
        Int diff = acc.cong[i] - sys.c[i];
        if (!mpz_divisible_p(diff.get_mpz_t(), sys.d[i].get_mpz_t())) return false;
    }
    return true;
}

// Advance the odometer one step (last coordinate fastest) and update the
// accumulated row sums incrementally.
void step(const CongruenceSystem& sys, const Box& box, std::vector<long long>& x,
          Accumulator& acc) {
    for (std::size_t j = x.size(); j-- > 0;) {
        if (x[j] < box.hi[j]) {
            x[j] += 1;
            for (std::size_t i = 0; i < sys.a.rows(); ++i) acc.eq[i] += sys.a.at(i, j);
            for (std::size_t i = 0; i < sys.m.rows(); ++i) acc.cong[i] += sys.m.at(i, j);
            return;
        }
        Int span = to_int(box.hi[j] - box.lo[j]);
        x[j] = box.lo[j];
        for (std::size_t i = 0; i < sys.a.rows(); ++i) acc.eq[i] -= sys.a.at(i, j) * span;
        for (std::size_t i = 0; i < sys.m.rows(); ++i) acc.cong[i] -= sys.m.at(i, j) * span;
    }
}

// Scan the flat range [first, last) collecting solutions (or only counting
// when out == nullptr).
unsigned long long scan_range(const CongruenceSystem& sys, const Box& box,
                              unsigned long long first, unsigned long long last,
                              std::vector<std::vector<long long>>* out) {
    unsigned long long hits = 0;
    if (first >= last) return 0;
    std::vector<long long> x = decode(box, first);
    Accumulator acc = init_accumulator(sys, x);
    for (unsigned long long idx = first;;) {
        if (satisfied(sys, acc)) {
            ++hits;
            if (out) out->push_back(x);
        }
        if (++idx == last) break;
        step(sys, box, x, acc);
    }
    return hits;
}

unsigned long long num_chunks(unsigned long long total) {
#ifdef _OPENMP
    unsigned long long t = static_cast<unsigned long long>(omp_get_max_threads());
#else
    unsigned long long t = 1;
#endif
    unsigned long long chunks = t * 8;
    if (chunks > total) chunks = total;
    return chunks == 0 ? 1 : chunks;
}

}  // namespace

std::vector<std::vector<long long>> scan_solutions_serial(const CongruenceSystem& sys,
                                                          const Box& box) {
    validate(sys, box);
    unsigned long long total = box_point_count(box);
    std::vector<std::vector<long long>> out;
    scan_range(sys, box, 0, total, &out);
    return out;
}

std::vector<std::vector<long long>> scan_solutions_parallel(const CongruenceSystem& sys,
                                                            const Box& box) {
    validate(sys, box);
    unsigned long long total = box_point_count(box);
    const unsigned long long chunks = num_chunks(total);
    std::vector<std::vector<std::vector<long long>>> parts(chunks);
    const unsigned long long chunk_len = chunks ? (total + chunks - 1) / chunks : 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long ci = 0; ci < static_cast<long long>(chunks); ++ci) {
        unsigned long long first = static_cast<unsigned long long>(ci) * chunk_len;
        unsigned long long last = first + chunk_len;
        if (last > total) last = total;
        scan_range(sys, box, first, last, &parts[ci]);
    }
    std::vector<std::vector<long long>> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<std::vector<long long>> scan_solutions(const CongruenceSystem& sys, const Box& box) {
    validate(sys, box);
    if (box_point_count(box) >= 4096) return scan_solutions_parallel(sys, box);
    return scan_solutions_serial(sys, box);
}

unsigned long long scan_count_serial(const CongruenceSystem& sys, const Box& box) {
    validate(sys, box);
    return scan_range(sys, box, 0, box_point_count(box), nullptr);
}

unsigned long long scan_count_parallel(const CongruenceSystem& sys, const Box& box) {
    validate(sys, box);
    unsigned long long total = box_point_count(box);
    const unsigned long long chunks = num_chunks(total);
    const unsigned long long chunk_len = chunks ? (total + chunks - 1) / chunks : 0;
    unsigned long long hits = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : hits)
#endif
    for (long long ci = 0; ci < static_cast<long long>(chunks); ++ci) {
        unsigned long long first = static_cast<unsigned long long>(ci) * chunk_len;
        unsigned long long last = first + chunk_len;
        if (last > total) last = total;
        hits += scan_range(sys, box, first, last, nullptr);
    }
    return hits;
}

unsigned long long scan_count(const CongruenceSystem& sys, const Box& box) {
    validate(sys, box);
    if (box_point_count(box) >= 4096) return scan_count_parallel(sys, box);
    return scan_count_serial(sys, box);
}

}  // namespace torweyl
