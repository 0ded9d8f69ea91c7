#include "d2d/trace.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <stdexcept>
#include <string>

#include "d2d/textio.hpp"

namespace d2d {

namespace {

bool looks_numeric(std::string_view field) {
    double ignored;
    return parse_double(field, ignored);
}

EncounterRecord parse_record(const std::vector<std::string_view>& fields, std::size_t line_no) {
    if (fields.size() != 4)
        throw ParseError(line_no, "expected 4 fields, got " + std::to_string(fields.size()));

    long long a, b;
    double start, duration;
    if (!parse_int(fields[0], a)) throw ParseError(line_no, "bad user_a: '" + std::string(fields[0]) + "'");
    if (!parse_int(fields[1], b)) throw ParseError(line_no, "bad user_b: '" + std::string(fields[1]) + "'");
    if (!parse_double(fields[2], start)) throw ParseError(line_no, "bad start_s: '" + std::string(fields[2]) + "'");
    if (!parse_double(fields[3], duration)) throw ParseError(line_no, "bad duration_s: '" + std::string(fields[3]) + "'");

    if (a == b) throw ParseError(line_no, "self pair: user " + std::to_string(a));
    if (start < 0.0) throw ParseError(line_no, "negative start_s");
    if (!(duration > 0.0)) throw ParseError(line_no, "duration_s must be positive");

    return EncounterRecord{static_cast<int>(a), static_cast<int>(b), start, duration};
}

} // namespace

std::vector<EncounterRecord> parse_trace(std::istream& in) {
    std::vector<EncounterRecord> out;
    std::string raw;
    std::size_t line_no = 0;
    bool first_content_line = true;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty()) continue;

        auto fields = split_fields(line);
        if (first_content_line) {
            first_content_line = false;
            if (!fields.empty() && !looks_numeric(fields[0])) continue; // header row
        }
        out.push_back(parse_record(fields, line_no));
    }
    return out;
}

std::map<UserPair, ContactStats> contact_stats(const std::vector<EncounterRecord>& records) {
    // Welford accumulation; M2 is the running sum of squared deviations.
    struct Acc {
        long long n = 0;
        double mean = 0.0;
        double m2 = 0.0;
    };
    std::map<UserPair, Acc> accs;
    for (const auto& r : records) {
        Acc& acc = accs[UserPair(r.user_a, r.user_b)];
        ++acc.n;
        double delta = r.duration_s - acc.mean;
        acc.mean += delta / static_cast<double>(acc.n);
        acc.m2 += delta * (r.duration_s - acc.mean);
    }

    std::map<UserPair, ContactStats> out;
    for (const auto& [pair, acc] : accs)
        out[pair] = ContactStats{acc.n, acc.mean, acc.m2 / static_cast<double>(acc.n)};
    return out;
}

ContactStats merge_stats(const ContactStats& lhs, const ContactStats& rhs) {
    if (lhs.n_encounters == 0) return rhs;
    if (rhs.n_encounters == 0) return lhs;

    double na = static_cast<double>(lhs.n_encounters);
    double nb = static_cast<double>(rhs.n_encounters);
    double n = na + nb;
    double delta = rhs.mean_duration - lhs.mean_duration;

    ContactStats out;
    out.n_encounters = lhs.n_encounters + rhs.n_encounters;
    out.mean_duration = lhs.mean_duration + delta * nb / n;
    out.irregularity = (lhs.irregularity * na + rhs.irregularity * nb + delta * delta * na * nb / n) / n;
    return out;
}

std::vector<EncounterRecord> synthesize_trace(const std::map<int, Vec2>& positions,
                                              Rng& rng,
                                              const SynthesisConfig& cfg) {
    if (positions.size() < 2)
        throw std::invalid_argument("synthesize_trace: need at least 2 users");
    if (!(cfg.mean_encounters >= 0.0) || !(cfg.mean_duration_s > 0.0))
        throw std::invalid_argument("synthesize_trace: rates must be positive");
    if (!(cfg.duration_shape_min > 0.0) || cfg.duration_shape_max < cfg.duration_shape_min)
        throw std::invalid_argument("synthesize_trace: bad duration shape range");

    std::vector<EncounterRecord> out;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_shape_lo = std::log(cfg.duration_shape_min);
    const double log_shape_hi = std::log(cfg.duration_shape_max);

    for (auto i = positions.begin(); i != positions.end(); ++i) {
        for (auto j = std::next(i); j != positions.end(); ++j) {
            double d = distance(i->second, j->second);
            double decay = cfg.distance_decay_m > 0.0 ? std::exp(-d / cfg.distance_decay_m) : 1.0;

            double rate = cfg.mean_encounters * decay;
            long long count = rate > 0.0 ? std::poisson_distribution<long long>(rate)(rng) : 0;
            if (count == 0) continue;

            double shape = std::exp(log_shape_lo + (log_shape_hi - log_shape_lo) * unit(rng));
            double scale = cfg.mean_duration_s * decay / shape;
            std::gamma_distribution<double> duration(shape, scale);

            for (long long k = 0; k < count; ++k) {
                double start = cfg.observation_window_s * unit(rng);
                double dur = duration(rng);
                if (dur <= 0.0) dur = std::numeric_limits<double>::min(); // guard against underflow to 0
                out.push_back(EncounterRecord{i->first, j->first, start, dur});
            }
        }
    }
    return out;
}

} // namespace d2d
