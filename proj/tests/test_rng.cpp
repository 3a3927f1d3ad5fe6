#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "morlax/rng.hpp"

using morlax::Rng;

TEST_CASE("same seed yields identical streams") {
    Rng a(12345);
    Rng b(12345);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    Rng c(12345);
    Rng d(12346);
    bool all_equal = true;
    for (int i = 0; i < 100; ++i) {
        if (c.next_u64() != d.next_u64()) all_equal = false;
    }
    CHECK_FALSE(all_equal);
}

TEST_CASE("from_state round trip resumes the stream exactly") {
    Rng a(7);
    for (int i = 0; i < 17; ++i) a.next_u64();
    Rng b = Rng::from_state(a.key(), a.counter());
    for (int i = 0; i < 50; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("split is pure and lane-deterministic") {
    Rng parent(99);
    const std::uint64_t key_before = parent.key();
    const std::uint64_t ctr_before = parent.counter();
    Rng c1 = parent.split(3);
    Rng c2 = parent.split(3);
    Rng c3 = parent.split(4);
    CHECK(parent.key() == key_before);
    CHECK(parent.counter() == ctr_before);
    CHECK(c1.key() == c2.key());
    CHECK(c1.key() != c3.key());
    // Children agree word for word when the lane matches.
    for (int i = 0; i < 20; ++i) CHECK(c1.next_u64() == c2.next_u64());
}

TEST_CASE("split children are decorrelated from the parent and each other") {
    Rng parent(0);
    std::set<std::uint64_t> first_words;
    for (std::uint64_t lane = 0; lane < 1000; ++lane) {
        Rng child = parent.split(lane);
        first_words.insert(child.next_u64());
    }
    CHECK(first_words.size() == 1000);  // no collisions across lanes
}

TEST_CASE("next_double lies in [0,1) and next_open in (0,1]") {
    Rng rng(42);
    for (int i = 0; i < 10000; ++i) {
        const double d = rng.next_double();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
        const double o = rng.next_open();
        CHECK(o > 0.0);
        CHECK(o <= 1.0);
    }
}

TEST_CASE("next_double is approximately uniform") {
    Rng rng(2024);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = rng.next_double();
        sum += d;
        sumsq += d * d;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 0.005);          // se ~ 0.0009
    CHECK(std::abs(var - 1.0 / 12.0) < 0.005);
}

TEST_CASE("next_gaussian has standard-normal moments") {
    Rng rng(7);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        sum += g;
        sumsq += g * g;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);       // se ~ 0.003
    CHECK(std::abs(var - 1.0) < 0.03);  // se ~ 0.0045
}

TEST_CASE("next_gaussian consumes exactly two words") {
    Rng a(5);
    (void)a.next_gaussian();
    CHECK(a.counter() == 2);
    (void)a.next_gaussian();
    CHECK(a.counter() == 4);
}

TEST_CASE("next_below stays within range and covers it") {
    Rng rng(11);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const std::uint64_t v = rng.next_below(7);
        REQUIRE(v < 7);
        ++counts[static_cast<std::size_t>(v)];
    }
    for (int c : counts) CHECK(c > 700);  // each bucket near 1000
}

TEST_CASE("shuffle produces a permutation and depends on the stream") {
    Rng rng(3);
    std::vector<int> v(100);
    std::iota(v.begin(), v.end(), 0);
    const std::vector<int> original = v;
    rng.shuffle(v);
    CHECK(v != original);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == original);

    // Same stream state => same shuffle.
    Rng r1(3), r2(3);
    std::vector<int> a(50), b(50);
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), 0);
    r1.shuffle(a);
    r2.shuffle(b);
    CHECK(a == b);
}
