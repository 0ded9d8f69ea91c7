#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "d2d/geometry.hpp"
#include "d2d/rng.hpp"

namespace d2d {

// Unordered user pair, stored with a < b.
struct UserPair {
    int a;
    int b;

    UserPair(int u, int v) : a(u < v ? u : v), b(u < v ? v : u) {}

    friend bool operator==(const UserPair&, const UserPair&) = default;
    friend auto operator<=>(const UserPair& l, const UserPair& r) = default;
};

// One proximity encounter between two users.
struct EncounterRecord {
    int user_a;
    int user_b;
    double start_s;
    double duration_s;
};

// Per-pair encounter summary: count, mean duration, and duration variance
// (population form, divided by the count). The variance doubles as the
// irregularity of the contact process.
struct ContactStats {
    long long n_encounters = 0;
    double mean_duration = 0.0;
    double irregularity = 0.0;
};

// Reads encounter records from CSV text: user_a,user_b,start_s,duration_s.
// A header row is recognized by a non numeric first field and skipped.
// Lines may end in LF or CRLF; blank lines are ignored. Malformed rows,
// self pairs, negative starts and non positive durations raise ParseError
// carrying the 1-based line number.
std::vector<EncounterRecord> parse_trace(std::istream& in);

// Folds records into per-pair stats. Order of records does not matter.
std::map<UserPair, ContactStats> contact_stats(const std::vector<EncounterRecord>& records);

// Combines stats computed over two disjoint record batches. Up to floating
// rounding, merge(stats(A), stats(B)) == stats(A ++ B).
ContactStats merge_stats(const ContactStats& lhs, const ContactStats& rhs);

// Synthetic contact process used when no measured trace is supplied.
// Encounter counts per pair are Poisson; durations are Gamma with a per-pair
// shape drawn log-uniformly from [duration_shape_min, duration_shape_max].
// When distance_decay_m > 0, both the encounter rate and the mean duration
// shrink by exp(-d / distance_decay_m) with the pair distance d, so far
// apart users meet rarely and briefly.
struct SynthesisConfig {
    double mean_encounters = 25.0;
    double duration_shape_min = 0.5;
    double duration_shape_max = 4.0;
    double mean_duration_s = 5.0;
    double distance_decay_m = 80.0;
    double observation_window_s = 86400.0;
};

// Draws a trace for the users in `positions`. Pairs are visited in ascending
// (a, b) order so a fixed rng state yields a fixed trace. Pairs whose Poisson
// draw is zero produce no records and therefore no graph edge later on.
std::vector<EncounterRecord> synthesize_trace(const std::map<int, Vec2>& positions,
                                              Rng& rng,
                                              const SynthesisConfig& cfg);

} // namespace d2d
