#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "d2d/textio.hpp"
#include "d2d/trace.hpp"

using namespace d2d;

namespace {

std::vector<EncounterRecord> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_trace(in);
}

} // namespace

TEST_CASE("parse_trace maps fields directly") {
    auto records = parse("1,2,0,5.0\n1,2,100,3.0\n");
    REQUIRE(records.size() == 2);
    CHECK(records[0].user_a == 1);
    CHECK(records[0].user_b == 2);
    CHECK(records[0].start_s == 0.0);
    CHECK(records[0].duration_s == 5.0);
    CHECK(records[1].start_s == 100.0);
    CHECK(records[1].duration_s == 3.0);
}

TEST_CASE("parse_trace handles empty input, headers, CRLF and blank lines") {
    CHECK(parse("").empty());
    CHECK(parse("user_a,user_b,start_s,duration_s\n").empty());

    auto with_header = parse("user_a,user_b,start_s,duration_s\r\n3,4,1.5,2.5\r\n\r\n");
    REQUIRE(with_header.size() == 1);
    CHECK(with_header[0].user_a == 3);
    CHECK(with_header[0].duration_s == 2.5);
}

TEST_CASE("parse_trace rejects malformed rows with the line number") {
    CHECK_THROWS_WITH_AS(parse("1,1,0,5.0\n"), doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_AS(parse("1,2,0\n"), ParseError);
    CHECK_THROWS_AS(parse("1,2,0,abc\n"), ParseError);
    CHECK_THROWS_AS(parse("1,2,-1,5.0\n"), ParseError);
    CHECK_THROWS_AS(parse("1,2,0,0\n"), ParseError);
    CHECK_THROWS_AS(parse("1,2,0,-3\n"), ParseError);

    try {
        parse("1,2,0,5.0\n1,2,3,bad\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("contact_stats matches hand arithmetic") {
    auto stats = contact_stats(parse("1,2,0,2\n1,2,10,4\n1,2,20,6\n"));
    REQUIRE(stats.size() == 1);
    const auto& s = stats.at(UserPair(1, 2));
    CHECK(s.n_encounters == 3);
    CHECK(s.mean_duration == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(s.irregularity == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("contact_stats degenerate cases have zero variance") {
    auto single = contact_stats(parse("1,2,0,5\n"));
    CHECK(single.at(UserPair(1, 2)).n_encounters == 1);
    CHECK(single.at(UserPair(1, 2)).mean_duration == 5.0);
    CHECK(single.at(UserPair(1, 2)).irregularity == 0.0);

    auto constant = contact_stats(parse("1,2,0,7.25\n1,2,1,7.25\n1,2,2,7.25\n"));
    CHECK(constant.at(UserPair(1, 2)).irregularity == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("contact_stats normalizes pair order and keeps pairs separate") {
    auto stats = contact_stats(parse("2,1,0,4\n1,2,5,6\n3,1,0,9\n"));
    REQUIRE(stats.size() == 2);
    CHECK(stats.at(UserPair(1, 2)).n_encounters == 2);
    CHECK(stats.at(UserPair(1, 2)).mean_duration == doctest::Approx(5.0));
    CHECK(stats.at(UserPair(1, 3)).n_encounters == 1);
}

TEST_CASE("contact_stats is permutation invariant") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dur(0.1, 30.0);
    std::vector<EncounterRecord> records;
    for (int i = 0; i < 200; ++i)
        records.push_back({int(i % 5), int(i % 5 + 1 + i % 3), double(i), dur(rng)});

    auto base = contact_stats(records);
    std::shuffle(records.begin(), records.end(), rng);
    auto shuffled = contact_stats(records);

    REQUIRE(base.size() == shuffled.size());
    for (const auto& [pair, s] : base) {
        const auto& t = shuffled.at(pair);
        CHECK(t.n_encounters == s.n_encounters);
        CHECK(t.mean_duration == doctest::Approx(s.mean_duration).epsilon(1e-12));
        CHECK(t.irregularity == doctest::Approx(s.irregularity).epsilon(1e-12));
    }
}

TEST_CASE("merge_stats equals stats over the concatenation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dur(0.5, 12.0);
    std::vector<EncounterRecord> a, b, all;
    for (int i = 0; i < 60; ++i) {
        EncounterRecord r{4, 9, double(i), dur(rng)};
        (i < 23 ? a : b).push_back(r);
        all.push_back(r);
    }

    auto sa = contact_stats(a).at(UserPair(4, 9));
    auto sb = contact_stats(b).at(UserPair(4, 9));
    auto merged = merge_stats(sa, sb);
    auto whole = contact_stats(all).at(UserPair(4, 9));

    CHECK(merged.n_encounters == whole.n_encounters);
    CHECK(merged.mean_duration == doctest::Approx(whole.mean_duration).epsilon(1e-12));
    CHECK(merged.irregularity == doctest::Approx(whole.irregularity).epsilon(1e-12));
}

TEST_CASE("synthesize_trace requires at least two users") {
    std::map<int, Vec2> one = {{0, {0.0, 0.0}}};
    Rng rng = make_rng(1, 2);
    SynthesisConfig cfg;
    CHECK_THROWS_AS(synthesize_trace(one, rng, cfg), std::invalid_argument);
}

TEST_CASE("synthesize_trace is deterministic for a fixed seed") {
    std::map<int, Vec2> positions = {{0, {0.0, 0.0}}, {1, {10.0, 0.0}}, {2, {0.0, 25.0}}};
    SynthesisConfig cfg;

    Rng r1 = make_rng(99, 2);
    Rng r2 = make_rng(99, 2);
    auto a = synthesize_trace(positions, r1, cfg);
    auto b = synthesize_trace(positions, r2, cfg);

    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].user_a == b[i].user_a);
        CHECK(a[i].user_b == b[i].user_b);
        CHECK(a[i].start_s == b[i].start_s);
        CHECK(a[i].duration_s == b[i].duration_s);
    }
}

TEST_CASE("synthesize_trace output is well formed") {
    std::map<int, Vec2> positions;
    for (int i = 0; i < 8; ++i) positions[i] = {double(10 * i), double(i)};
    Rng rng = make_rng(3, 2);
    SynthesisConfig cfg;
    auto records = synthesize_trace(positions, rng, cfg);

    REQUIRE(!records.empty());
    for (const auto& r : records) {
        CHECK(r.user_a < r.user_b);
        CHECK(r.start_s >= 0.0);
        CHECK(r.start_s <= cfg.observation_window_s);
        CHECK(r.duration_s > 0.0);
    }
}

TEST_CASE("synthesized durations hit the configured gamma mean") {
    // Two colocated users so the distance decay is a no-op: shape fixed at 4
    // and mean 10 make the per-duration law Gamma(4, 2.5).
    std::map<int, Vec2> positions = {{0, {0.0, 0.0}}, {1, {0.0, 0.0}}};
    SynthesisConfig cfg;
    cfg.mean_encounters = 1e5;
    cfg.duration_shape_min = 4.0;
    cfg.duration_shape_max = 4.0;
    cfg.mean_duration_s = 10.0;

    Rng rng = make_rng(5, 2);
    auto records = synthesize_trace(positions, rng, cfg);
    REQUIRE(records.size() > 50000);

    double mean = 0.0;
    for (const auto& r : records) mean += r.duration_s;
    mean /= double(records.size());
    CHECK(mean == doctest::Approx(10.0).epsilon(0.01));
}
