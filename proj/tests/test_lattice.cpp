#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "cuspsym/errors.hpp"
#include "cuspsym/lattice.hpp"
#include "cuspsym/pairs.hpp"

using namespace cuspsym;

namespace {

// gcd of all k x k minors, by expansion over row and column subsets.
BigInt minor_gcd(const IntMatrix& m, std::size_t k)
{
    BigInt g = 0;
    std::vector<bool> rs(m.rows(), false), cs(m.cols(), false);
    std::fill(rs.begin(), rs.begin() + static_cast<long>(k), true);
    do {
        std::fill(cs.begin(), cs.end(), false);
        std::fill(cs.begin(), cs.begin() + static_cast<long>(k), true);
        do {
            IntMatrix sub(k, k);
            std::size_t r = 0;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                if (!rs[i])
                    continue;
                std::size_t c = 0;
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (cs[j])
                        sub(r, c++) = m(i, j);
                ++r;
            }
            g = gcd(g, abs(determinant(sub)));
        } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    return g;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int span)
{
    std::uniform_int_distribution<int> ent(-span, span);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = ent(rng);
    return m;
}

// Cofactor-expansion determinant, independent of the Bareiss routine.
BigInt cofactor_det(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    if (n == 1)
        return m(0, 0);
    BigInt d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix sub(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j)
                    sub(r - 1, cc++) = m(r, c);
        const BigInt term = m(0, j) * cofactor_det(sub);
        d += (j % 2 == 0) ? term : BigInt(-term);
    }
    return d;
}

std::vector<LatticeVec> t_i_rays()
{
    return {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
}

}  // namespace

TEST_CASE("determinant matches cofactor expansion")
{
    std::mt19937_64 rng(37);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + t % 5;
        const auto m = random_matrix(rng, n, n, 4);
        CHECK(determinant(m) == cofactor_det(m));
    }
}

TEST_CASE("smith normal form examples")
{
    auto f = smith_normal_form(IntMatrix{{2, 0}, {0, 2}});
    CHECK(f.diagonal() == std::vector<BigInt>{2, 2});
    f = smith_normal_form(IntMatrix{{1, 1}, {1, -1}});
    CHECK(f.diagonal() == std::vector<BigInt>{1, 2});
    f = smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    CHECK(f.diagonal() == std::vector<BigInt>{2, 6, 12});
    f = smith_normal_form(IntMatrix{{0, 0}, {0, 0}});
    CHECK(f.rank == 0);
}

TEST_CASE("smith normal form against determinantal divisors")
{
    std::mt19937_64 rng(41);
    for (int t = 0; t < 400; ++t) {
        const std::size_t r = 1 + t % 4, c = 1 + (t / 4) % 4;
        const auto m = random_matrix(rng, r, c, 6);
        const auto f = smith_normal_form(m);
        CHECK(f.U * m * f.V == f.S);
        CHECK(abs(determinant(f.U)) == 1);
        CHECK(abs(determinant(f.V)) == 1);
        const auto d = f.diagonal();
        BigInt prefix = 1;
        for (std::size_t k = 1; k <= d.size(); ++k) {
            prefix *= d[k - 1];
            CHECK(prefix == minor_gcd(m, k));
        }
    }
}

TEST_CASE("cokernel is invariant under row and column permutations")
{
    std::mt19937_64 rng(43);
    for (int t = 0; t < 200; ++t) {
        const std::size_t r = 2 + t % 4, c = 1 + t % 3;
        const auto m = random_matrix(rng, r, c, 5);
        std::vector<std::size_t> ro(r), co(c);
        std::iota(ro.begin(), ro.end(), 0);
        std::iota(co.begin(), co.end(), 0);
        std::shuffle(ro.begin(), ro.end(), rng);
        std::shuffle(co.begin(), co.end(), rng);
        CHECK(cokernel(m) == cokernel(m.permuted(ro, co)));
    }
}

TEST_CASE("cokernel examples and rendering")
{
    CHECK(cokernel(IntMatrix(2, 0)).free_rank == 2);
    CHECK(to_string(cokernel(IntMatrix(2, 0))) == "Z^2");
    CHECK(to_string(cokernel(IntMatrix{{1, -1}, {1, 1}})) == "Z/2");
    CHECK(to_string(cokernel(IntMatrix{{1, 0}, {0, 1}})) == "0");
    CHECK(to_string(cokernel(IntMatrix{{2}, {0}})) == "Z x Z/2");
}

TEST_CASE("class group of the quotient graph, k = 3")
{
    const QuotientGraph g{{3, 2, 3}};
    const auto q = fork_intersection_matrix(g);
    CHECK(q.rows() == 7);
    CHECK(q.cols() == 4);
    const auto f = smith_normal_form(q);
    CHECK(f.diagonal() == std::vector<BigInt>{1, 1, 2, 2});
    const auto cl = class_group_of_quotient(g);
    CHECK(cl.free_rank == 3);
    CHECK(cl.invariant_factors == std::vector<BigInt>{2, 2});
    CHECK(to_string(cl) == "Z^3 x Z/2 x Z/2");
    CHECK(cl.torsion_order() == 4);
}

TEST_CASE("class group over symmetric cusps")
{
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<std::size_t> half(2, 6);
    std::uniform_int_distribution<Entry> ent(2, 8);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 * half(rng);
        std::vector<Entry> e(n);
        for (auto& x : e)
            x = ent(rng);
        for (std::size_t i = 1; i < n / 2; ++i)
            e[n - i] = e[i];
        e[0] += e[0] % 2;
        e[n / 2] += e[n / 2] % 2;
        const CycleWord c(e);
        if (!validate_cusp(c).valid)
            continue;
        const auto g = quotient_resolution_graph(SymmetricStructure(c, Reflection(n, 0)));
        const auto cl = class_group_of_quotient(g);
        CHECK(cl.free_rank == n / 2 + 1);
        CHECK(cl.invariant_factors == std::vector<BigInt>{2, 2});
    }
}

TEST_CASE("pi1 of complements")
{
    auto r = pi1_complement({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
    CHECK(to_string(r.group) == "Z/2");
    r = pi1_complement({{2, 1}, {-1, 1}, {-1, -1}, {0, -1}});
    CHECK(r.group.trivial());
    r = pi1_complement({{1, 0}, {0, 1}});
    CHECK(r.group.trivial());
    r = pi1_complement({});
    CHECK(r.no_rays);
    CHECK(r.group.free_rank == 2);
    CHECK_THROWS_AS(pi1_complement({{2, 2}}), InvalidInput);
    CHECK(parse_rays("1,1;-1,1;-1,-1;1,-1").size() == 4);
    CHECK_THROWS_AS(parse_rays("1,1;2"), InvalidInput);
}

TEST_CASE("pi1 index equals the gcd of 2x2 minors")
{
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> ent(-5, 5);
    for (int t = 0; t < 300; ++t) {
        std::vector<LatticeVec> rays;
        while (rays.size() < 3) {
            LatticeVec v{ent(rng), ent(rng)};
            if (std::gcd(v.x, v.y) == 1)
                rays.push_back(v);
        }
        std::int64_t g = 0;
        for (std::size_t i = 0; i < rays.size(); ++i)
            for (std::size_t j = i + 1; j < rays.size(); ++j)
                g = std::gcd(g, rays[i].x * rays[j].y - rays[i].y * rays[j].x);
        const auto res = pi1_complement(rays).group;
        if (g == 0) {
            CHECK(res.free_rank == 1);
        } else {
            CHECK(res.free_rank == 0);
            CHECK(res.torsion_order() == g);
        }
    }
}

TEST_CASE("fan_from_cycle")
{
    const auto p1p1 = fan_from_cycle(CycleWord{0, 0, 0, 0});
    REQUIRE(p1p1);
    CHECK(*p1p1 == std::vector<LatticeVec>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}});

    const auto ti = fan_from_cycle(CycleWord{1, 2, 1, 2, 1, 2, 1, 2});
    REQUIRE(ti);
    CHECK(fans_equivalent(*ti, order_counterclockwise(t_i_rays())));

    CHECK_FALSE(fan_from_cycle(CycleWord{2, 2, 2}));
    CHECK_FALSE(fan_from_cycle(CycleWord{1, 1, 1, 1}));
    CHECK(fan_from_cycle(CycleWord{-1, -1, -1}));  // P^2
    CHECK(fan_from_cycle(CycleWord{-1, 0, 1, 0}));  // F_1
}

TEST_CASE("T_ii fan is the smooth fan of its boundary cycle")
{
    // Blow up the four-ray fan of P1 x P1 at the corners that produce the
    // T_ii rays, then compare with the reconstruction from its cycle.
    const std::vector<LatticeVec> rays = order_counterclockwise(
        {{1, 0}, {2, 1}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}});
    std::vector<Entry> d(rays.size());
    const std::size_t n = rays.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = rays[(i + n - 1) % n];
        const auto& b = rays[(i + 1) % n];
        const auto s = a + b;
        const auto& v = rays[i];
        d[i] = v.x != 0 ? s.x / v.x : s.y / v.y;
        CHECK(d[i] * v == s);
    }
    CHECK(dihedrally_equal(CycleWord(d), CycleWord{1, 2, 1, 2, 2, 1, 2, 1}));
    const auto fan = fan_from_cycle(CycleWord(d));
    REQUIRE(fan);
    CHECK(fans_equivalent(*fan, rays));
    // The complement group uses the rays at the (-1)-components.
    std::vector<LatticeVec> minus_one;
    for (std::size_t i = 0; i < n; ++i)
        if (d[i] == 1)
            minus_one.push_back(rays[i]);
    CHECK(pi1_complement(minus_one).group.trivial());
}

TEST_CASE("fans of the toric models are smooth and complete")
{
    for (std::size_t n = 4; n <= 12; n += 2) {
        for (const auto& m : enumerate_equivariant_toric(n).models) {
            const auto fan = fan_from_cycle(m.pair.d());
            REQUIRE(fan);
            const auto& v = *fan;
            for (std::size_t i = 0; i < n; ++i)
                CHECK(v[(i + n - 1) % n] + v[(i + 1) % n] == m.pair.d()[i] * v[i]);
        }
    }
}
