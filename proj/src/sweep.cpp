#include "d2d/sweep.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "d2d/textio.hpp"

namespace d2d {

namespace {

constexpr const char* kFormatVersion = "# d2dsim-sweep-csv v1";

double aggregate_value(const EpisodeAggregates& a, const std::string& metric) {
    if (metric == "offloaded_traffic") return a.offloaded_traffic;
    if (metric == "enb_data_rate_sum") return a.enb_data_rate_sum;
    if (metric == "d2d_data_rate_sum") return a.d2d_data_rate_sum;
    if (metric == "enb_served_requests") return static_cast<double>(a.enb_served_requests);
    if (metric == "d2d_served_requests") return static_cast<double>(a.d2d_served_requests);
    if (metric == "d2d_success_ratio") return a.d2d_success_ratio;
    if (metric == "distinct_contents") return static_cast<double>(a.distinct_contents);
    throw std::logic_error("unknown sweep metric " + metric);
}

} // namespace

const std::vector<std::string>& sweep_metrics() {
    static const std::vector<std::string> metrics = {
        "offloaded_traffic",    "enb_data_rate_sum",   "d2d_data_rate_sum",
        "enb_served_requests",  "d2d_served_requests", "d2d_success_ratio",
        "distinct_contents",
    };
    return metrics;
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::alpha: return "alpha";
        case SweepAxis::d2d_max: return "d2d_max";
        case SweepAxis::cost_fraction: return "cost_fraction";
        case SweepAxis::w_t: return "w_t";
    }
    throw std::logic_error("unreachable");
}

SweepAxis axis_from_name(const std::string& name) {
    if (name == "alpha") return SweepAxis::alpha;
    if (name == "d2d_max") return SweepAxis::d2d_max;
    if (name == "cost_fraction") return SweepAxis::cost_fraction;
    if (name == "w_t") return SweepAxis::w_t;
    throw std::invalid_argument("unknown sweep axis '" + name +
                                "' (expected alpha, d2d_max, cost_fraction or w_t)");
}

void SweepSpec::validate() const {
    if (values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("sweep: values must be strictly increasing");
    if (replicas < 1) throw std::invalid_argument("sweep: replicas must be at least 1");
    base.validate();
}

EpisodeConfig apply_axis(const EpisodeConfig& base, SweepAxis axis, double value) {
    EpisodeConfig cfg = base;
    switch (axis) {
        case SweepAxis::alpha: cfg.alpha = value; break;
        case SweepAxis::d2d_max: cfg.d2d_max_m = value; break;
        case SweepAxis::cost_fraction:
            cfg.costs.as_rate_fraction = true;
            cfg.costs.c_c = value;
            break;
        case SweepAxis::w_t: cfg.w_t = value; break;
    }
    return cfg;
}

SweepTable run_sweep(const SweepSpec& spec) {
    spec.validate();

    SweepTable table;
    table.axis = spec.axis;

    for (double value : spec.values) {
        EpisodeConfig cfg = apply_axis(spec.base, spec.axis, value);

        std::vector<std::vector<double>> samples(sweep_metrics().size());
        for (int r = 0; r < spec.replicas; ++r) {
            cfg.seed = spec.base.seed + static_cast<std::uint64_t>(r);
            EpisodeMetrics m = run_episode(cfg);
            for (std::size_t i = 0; i < sweep_metrics().size(); ++i)
                samples[i].push_back(aggregate_value(m.agg, sweep_metrics()[i]));
        }

        for (std::size_t i = 0; i < sweep_metrics().size(); ++i) {
            const auto& xs = samples[i];
            double n = static_cast<double>(xs.size());
            double mean = 0.0;
            for (double x : xs) mean += x;
            mean /= n;
            double ss = 0.0;
            for (double x : xs) ss += (x - mean) * (x - mean);
            double stddev = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
            table.rows.push_back(SweepRow{value, sweep_metrics()[i], mean, stddev, spec.replicas});
        }
    }
    return table;
}

void emit_csv(const SweepTable& table, std::ostream& out) {
    if (table.rows.empty()) throw std::invalid_argument("emit_csv: empty table");
    out << kFormatVersion << '\n';
    out << "axis,value,metric,mean,std,replicas\n";
    const std::string axis = axis_name(table.axis);
    for (const auto& row : table.rows) {
        out << axis << ',' << dtos(row.value) << ',' << row.metric << ',' << dtos(row.mean) << ','
            << dtos(row.stddev) << ',' << row.replicas << '\n';
    }
}

SweepTable parse_sweep_csv(std::istream& in) {
    SweepTable table;
    std::string raw;
    std::size_t line_no = 0;
    bool saw_header = false;
    bool saw_axis = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') continue;
        if (!saw_header) {
            if (line != "axis,value,metric,mean,std,replicas")
                throw ParseError(line_no, "unexpected sweep CSV header");
            saw_header = true;
            continue;
        }

        auto fields = split_fields(line);
        if (fields.size() != 6)
            throw ParseError(line_no, "expected 6 fields, got " + std::to_string(fields.size()));

        SweepRow row;
        SweepAxis axis;
        try {
            axis = axis_from_name(std::string(fields[0]));
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        if (saw_axis && axis != table.axis) throw ParseError(line_no, "mixed axes in one table");
        table.axis = axis;
        saw_axis = true;

        long long replicas;
        if (!parse_double(fields[1], row.value)) throw ParseError(line_no, "bad value field");
        row.metric = std::string(fields[2]);
        if (!parse_double(fields[3], row.mean)) throw ParseError(line_no, "bad mean field");
        if (!parse_double(fields[4], row.stddev)) throw ParseError(line_no, "bad std field");
        if (!parse_int(fields[5], replicas)) throw ParseError(line_no, "bad replicas field");
        row.replicas = static_cast<int>(replicas);
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

// Pixel coordinate, rounded so the file stays small; tick label, shortened
// to six significant digits. Both go through to_chars, never the locale.
std::string px(double v) { return dtos(std::round(v * 100.0) / 100.0); }

std::string tick_label(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
    if (ec != std::errc()) throw std::runtime_error("tick_label: conversion failed");
    return std::string(buf, end);
}

} // namespace

std::string render_metric_svg(const SweepTable& table, const std::string& metric) {
    std::vector<const SweepRow*> rows;
    for (const auto& row : table.rows)
        if (row.metric == metric) rows.push_back(&row);
    if (rows.empty()) throw std::invalid_argument("render_metric_svg: no rows for metric " + metric);

    double x_lo = rows.front()->value, x_hi = rows.front()->value;
    double y_lo = rows.front()->mean - rows.front()->stddev;
    double y_hi = rows.front()->mean + rows.front()->stddev;
    for (const auto* r : rows) {
        x_lo = std::min(x_lo, r->value);
        x_hi = std::max(x_hi, r->value);
        y_lo = std::min(y_lo, r->mean - r->stddev);
        y_hi = std::max(y_hi, r->mean + r->stddev);
    }
    if (x_hi == x_lo) { x_lo -= 0.5; x_hi += 0.5; }
    if (y_hi == y_lo) { y_lo -= 0.5; y_hi += 0.5; }
    double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    const double width = 640, height = 420;
    const double ml = 80, mr = 20, mt = 40, mb = 55;
    auto sx = [&](double v) { return ml + (v - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
    auto sy = [&](double v) { return height - mb - (v - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width) << "\" height=\""
        << px(height) << "\" viewBox=\"0 0 " << px(width) << ' ' << px(height) << "\">\n";
    svg << "<rect width=\"" << px(width) << "\" height=\"" << px(height)
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << px(width / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << metric << " vs "
        << axis_name(table.axis) << "</text>\n";

    // Axes.
    svg << "<line x1=\"" << px(ml) << "\" y1=\"" << px(height - mb) << "\" x2=\""
        << px(width - mr) << "\" y2=\"" << px(height - mb) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << px(ml) << "\" y1=\"" << px(mt) << "\" x2=\"" << px(ml) << "\" y2=\""
        << px(height - mb) << "\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 4; ++t) {
        double fx = x_lo + (x_hi - x_lo) * t / 4.0;
        double fy = y_lo + (y_hi - y_lo) * t / 4.0;
        svg << "<line x1=\"" << px(sx(fx)) << "\" y1=\"" << px(height - mb) << "\" x2=\""
            << px(sx(fx)) << "\" y2=\"" << px(height - mb + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px(sx(fx)) << "\" y=\"" << px(height - mb + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(fx) << "</text>\n";
        svg << "<line x1=\"" << px(ml - 5) << "\" y1=\"" << px(sy(fy)) << "\" x2=\"" << px(ml)
            << "\" y2=\"" << px(sy(fy)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px(ml - 8) << "\" y=\"" << px(sy(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(fy) << "</text>\n";
    }
    svg << "<text x=\"" << px((ml + width - mr) / 2) << "\" y=\"" << px(height - 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << axis_name(table.axis) << "</text>\n";

    // Stddev whiskers.
    for (const auto* r : rows) {
        svg << "<line x1=\"" << px(sx(r->value)) << "\" y1=\"" << px(sy(r->mean - r->stddev))
            << "\" x2=\"" << px(sx(r->value)) << "\" y2=\"" << px(sy(r->mean + r->stddev))
            << "\" stroke=\"#888888\"/>\n";
    }

    svg << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\" points=\"";
    for (const auto* r : rows) svg << px(sx(r->value)) << ',' << px(sy(r->mean)) << ' ';
    svg << "\"/>\n";
    for (const auto* r : rows)
        svg << "<circle cx=\"" << px(sx(r->value)) << "\" cy=\"" << px(sy(r->mean))
            << "\" r=\"3\" fill=\"#1f6fb2\"/>\n";

    svg << "</svg>\n";
    return svg.str();
}

} // namespace d2d
