#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "curvecount/words.hpp"

using namespace curvecount;

TEST_CASE("canonicalize basics") {
    CHECK(CyclicWord::canonicalize("abBa").str() == "aa");
    CHECK(CyclicWord::canonicalize("ba") == CyclicWord::canonicalize("ab"));
    CHECK(CyclicWord::canonicalize("AB") == CyclicWord::canonicalize("ab"));
    CHECK_THROWS_AS(CyclicWord::canonicalize("aA"), std::domain_error);
}

TEST_CASE("canonicalize is idempotent") {
    std::mt19937_64 rng(7);
    const char letters[4] = {'a', 'A', 'b', 'B'};
    for (int trial = 0; trial < 500; ++trial) {
        std::string w;
        int n = 1 + int(rng() % 12);
        for (int i = 0; i < n; ++i) w.push_back(letters[rng() % 4]);
        std::string reduced = cyclic_reduce(w);
        if (reduced.empty()) continue;
        auto c1 = CyclicWord::canonicalize(w);
        auto c2 = CyclicWord::canonicalize(c1.str());
        REQUIRE(c1 == c2);
    }
}

TEST_CASE("canonical form is a conjugacy-and-inversion invariant") {
    std::mt19937_64 rng(11);
    const char letters[4] = {'a', 'A', 'b', 'B'};
    for (int trial = 0; trial < 300; ++trial) {
        std::string w;
        int n = 2 + int(rng() % 10);
        for (int i = 0; i < n; ++i) w.push_back(letters[rng() % 4]);
        if (cyclic_reduce(w).empty()) continue;
        auto base = CyclicWord::canonicalize(w);
        // conjugate by a random word
        std::string c;
        for (int i = 0; i < int(rng() % 5); ++i) c.push_back(letters[rng() % 4]);
        std::string conj = c + w + invert_word(c);
        REQUIRE(CyclicWord::canonicalize(conj) == base);
        REQUIRE(CyclicWord::canonicalize(invert_word(w)) == base);
    }
}

TEST_CASE("primitivity") {
    CHECK(CyclicWord::canonicalize("ab").primitive());
    CHECK_FALSE(CyclicWord::canonicalize("abab").primitive());
    CHECK(CyclicWord::canonicalize("aab").primitive());
    CHECK_FALSE(CyclicWord::canonicalize("aabaab").primitive());
}

TEST_CASE("peripheral detection") {
    CHECK(CyclicWord::canonicalize("aBAb").peripheral());
    CHECK_FALSE(CyclicWord::canonicalize("ab").peripheral());
    CHECK(CyclicWord::canonicalize("abABabAB").peripheral());
    CHECK_FALSE(CyclicWord::canonicalize("aabABB").peripheral());
    // the puncture class survives every mapping class
    for (auto moves : {"T", "S", "I", "TS", "TtSI", "SSTI"}) {
        MappingClass phi{moves};
        CHECK(phi.apply(CyclicWord::canonicalize("abAB")).peripheral());
    }
}

TEST_CASE("mapping class moves") {
    MappingClass T{"T"};
    CHECK(T.apply(CyclicWord::canonicalize("a")).str() == "ab");
    CHECK(T.apply(CyclicWord::canonicalize("b")).str() == "b");

    // homology pushforward: T on aab has homology matrix * (2,1)
    auto m = T.homology_matrix();
    auto [p, q] = CyclicWord::canonicalize("aab").homology();
    auto img = T.apply(CyclicWord::canonicalize("aab"));
    auto [ip, iq] = img.homology();
    std::int64_t ep = m[0] * p + m[1] * q;
    std::int64_t eq = m[2] * p + m[3] * q;
    bool same = (ip == ep && iq == eq) || (ip == -ep && iq == -eq);
    CHECK(same);
}

TEST_CASE("homology matrices have determinant +-1 and compose") {
    std::mt19937_64 rng(23);
    const char moves[4] = {'T', 't', 'S', 'I'};
    for (int trial = 0; trial < 200; ++trial) {
        std::string mw1, mw2;
        for (int i = 0; i < int(rng() % 6); ++i) mw1.push_back(moves[rng() % 4]);
        for (int i = 0; i < int(rng() % 6); ++i) mw2.push_back(moves[rng() % 4]);
        MappingClass f{mw1}, g{mw2};
        auto mf = f.homology_matrix();
        REQUIRE(std::abs(mf[0] * mf[3] - mf[1] * mf[2]) == 1);
        // apply respects composition
        std::string w;
        const char letters[4] = {'a', 'A', 'b', 'B'};
        for (int i = 0; i < 2 + int(rng() % 10); ++i) w.push_back(letters[rng() % 4]);
        if (cyclic_reduce(w).empty()) continue;
        auto base = CyclicWord::canonicalize(w);
        REQUIRE((f * g).apply(base) == f.apply(g.apply(base)));
    }
}

TEST_CASE("christoffel words") {
    CHECK(christoffel(1, 0).str() == "a");
    CHECK(christoffel(0, 1).str() == "b");
    CHECK(christoffel(1, 1) == CyclicWord::canonicalize("ab"));
    CHECK(christoffel(2, 1) == CyclicWord::canonicalize("aab"));
    CHECK(christoffel(3, 2) == CyclicWord::canonicalize("aabab"));
    CHECK_THROWS_AS(christoffel(2, 4), std::domain_error);
    CHECK_THROWS_AS(christoffel(0, 0), std::domain_error);

    // homology matches the slope and the words are primitive
    for (std::int64_t p = -8; p <= 8; ++p)
        for (std::int64_t q = -8; q <= 8; ++q) {
            if ((p == 0 && q == 0) || std::gcd(std::abs(p), std::abs(q)) != 1) continue;
            auto w = christoffel(p, q);
            auto [hp, hq] = w.homology();
            bool match = (hp == p && hq == q) || (hp == -p && hq == -q);
            REQUIRE(match);
            REQUIRE(w.primitive());
        }
}

TEST_CASE("unoriented slope classes collapse") {
    CHECK(christoffel(1, 0) == christoffel(-1, 0));
    CHECK(christoffel(2, 3) == christoffel(-2, -3));
}
