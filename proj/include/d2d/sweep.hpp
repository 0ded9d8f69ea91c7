#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "d2d/engine.hpp"

namespace d2d {

// Swept parameter. cost_fraction switches the cost model to rate fractions
// and drives the control-signaling entry.
enum class SweepAxis { alpha, d2d_max, cost_fraction, w_t };

std::string axis_name(SweepAxis axis);
SweepAxis axis_from_name(const std::string& name);

struct SweepSpec {
    SweepAxis axis = SweepAxis::alpha;
    std::vector<double> values; // strictly increasing, nonempty
    int replicas = 100;         // episodes per value
    EpisodeConfig base;

    void validate() const;
};

// Mean and sample standard deviation of one episode aggregate at one axis
// value, over `replicas` episodes.
struct SweepRow {
    double value = 0.0;
    std::string metric;
    double mean = 0.0;
    double stddev = 0.0;
    int replicas = 0;
};

struct SweepTable {
    SweepAxis axis = SweepAxis::alpha;
    std::vector<SweepRow> rows;
};

// Returns cfg with the axis value applied.
EpisodeConfig apply_axis(const EpisodeConfig& base, SweepAxis axis, double value);

// Runs replicas at every axis value. Replica r of every value runs with
// seed base.seed + r, so values are compared under common random numbers.
// Rows are ordered by (value index, metric name).
SweepTable run_sweep(const SweepSpec& spec);

// CSV with a format-version comment line and header
// axis,value,metric,mean,std,replicas. Byte deterministic.
void emit_csv(const SweepTable& table, std::ostream& out);

// Inverse of emit_csv, for round-trip checks and downstream tooling.
SweepTable parse_sweep_csv(std::istream& in);

// Self-contained SVG line chart (mean with stddev whiskers) of one metric.
std::string render_metric_svg(const SweepTable& table, const std::string& metric);

// Names of the metrics a sweep reports, in row order.
const std::vector<std::string>& sweep_metrics();

} // namespace d2d
