#include "circfac/hitting.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace circfac;

namespace {
Point pt(std::vector<long> v) { return Point(v.begin(), v.end()); }
}  // namespace

TEST_CASE("grid streams")
{
    HittingSetSpec s1{1, 2};
    auto st = points(s1);
    CHECK(collect(*st) == std::vector<Point>{pt({0}), pt({1}), pt({2})});
    HittingSetSpec s2{2, 1};
    auto g = collect(*points(s2));
    CHECK(g == std::vector<Point>{pt({0, 0}), pt({0, 1}), pt({1, 0}), pt({1, 1})});
    // x0 x1 - 1 is hit by (1,1)
    bool hit = false;
    for (const auto& p : g) hit |= p[0] * p[1] - 1 != 0;
    CHECK(hit);
    // restartable
    auto st2 = points(s2);
    collect(*st2, 2);
    st2->reset();
    CHECK(collect(*st2) == g);
}

TEST_CASE("projection")
{
    HittingSetSpec s2{2, 1};
    CHECK(collect(*project(points(s2), 1)) == std::vector<Point>{pt({0}), pt({1})});
    CHECK(collect(*project(points(s2), 2)) == collect(*points(s2)));
    CHECK(collect(*points(project(s2, 1))) == std::vector<Point>{pt({0}), pt({1})});

    class Fixed : public PointStream {
    public:
        std::optional<Point> next() override { return i_ < 2 ? std::optional<Point>(pt({i_++, 5})) : std::nullopt; }
        void reset() override { i_ = 0; }

    private:
        long i_ = 0;
    };
    CHECK(collect(*project(std::make_unique<Fixed>(), 1)) == std::vector<Point>{pt({0}), pt({1})});
}

TEST_CASE("grid cap and modes")
{
    HittingSetSpec big{6, 99};
    CHECK_THROWS_WITH_AS(points(big), doctest::Contains("seeded"), Error);
    auto s = HittingSetSpec::parse_mode("seeded:7:20", 3, 4);
    CHECK(s.mode == HittingMode::Seeded);
    CHECK(s.mode_string() == "seeded:7:20");
    auto a = collect(*points(s)), b = collect(*points(s));
    CHECK(a.size() == 20);
    CHECK(a == b);
    CHECK_THROWS_AS(HittingSetSpec::parse_mode("random", 1, 1), Error);
}

TEST_CASE("grid completeness on random polynomials")
{
    std::mt19937_64 rng(47);
    for (int t = 0; t < 500; ++t) {
        int n = 1 + t % 3, deg = 1 + t % 4;
        DensePoly p = testutil::random_dense(rng, n, deg, 4);
        if (p.is_zero()) continue;
        HittingSetSpec spec{n, deg};
        auto st = points(spec);
        bool hit = false;
        while (auto q = st->next()) {
            std::vector<Scalar> sq(q->begin(), q->end());
            if (!p.evaluate(sq).is_zero()) {
                hit = true;
                break;
            }
        }
        CHECK(hit);
    }
}

TEST_CASE("simplex")
{
    auto s = simplex_points(2, 2);
    CHECK(s.size() == 6);
    CHECK(s.front() == std::vector<int>{0, 0});
    CHECK(s.back() == std::vector<int>{2, 0});
    CHECK(simplex_points(3, 4).size() == 35);
}

TEST_CASE("splitmix reference values")
{
    // first outputs for seed 0 from the published reference implementation
    SplitMix64 r(0);
    CHECK(r.next() == 0xE220A8397B1DCDAFULL);
    CHECK(r.next() == 0x6E789E6AA1B965F4ULL);
}
