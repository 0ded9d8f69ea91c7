#include "d2d/config.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "d2d/textio.hpp"

namespace d2d {

namespace {

using Setter = std::function<void(EpisodeConfig&, std::string_view, std::size_t)>;

double need_double(std::string_view value, std::size_t line) {
    double out;
    if (!parse_double(value, out)) throw ParseError(line, "expected a number, got '" + std::string(value) + "'");
    return out;
}

long long need_int(std::string_view value, std::size_t line) {
    long long out;
    if (!parse_int(value, out)) throw ParseError(line, "expected an integer, got '" + std::string(value) + "'");
    return out;
}

bool need_bool(std::string_view value, std::size_t line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ParseError(line, "expected true or false, got '" + std::string(value) + "'");
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"n_users", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.n_users = static_cast<int>(need_int(v, l)); }},
        {"cell_radius_m", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.cell_radius_m = need_double(v, l); }},
        {"d2d_max_m", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.d2d_max_m = need_double(v, l); }},
        {"alpha", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.alpha = need_double(v, l); }},
        {"w_t", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.w_t = need_double(v, l); }},
        {"content_bits", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.content_bits = need_double(v, l); }},
        {"min_separation_m", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.min_separation_m = need_double(v, l); }},
        {"seed", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.seed = static_cast<std::uint64_t>(need_int(v, l)); }},
        {"utility_form",
         [](EpisodeConfig& c, std::string_view v, std::size_t l) {
             if (v == "expected") c.utility_form = UtilityForm::expected;
             else if (v == "realized") c.utility_form = UtilityForm::realized;
             else throw ParseError(l, "utility_form must be 'expected' or 'realized'");
         }},
        {"channel.path_loss_exp", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.channel.path_loss_exp = need_double(v, l); }},
        {"channel.p_enb_dbm", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.channel.p_enb_dbm = need_double(v, l); }},
        {"channel.p_ue_dbm", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.channel.p_ue_dbm = need_double(v, l); }},
        {"channel.gain_enb_dbi", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.channel.gain_enb_dbi = need_double(v, l); }},
        {"channel.gain_ue_dbi", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.channel.gain_ue_dbi = need_double(v, l); }},
        {"channel.noise_density_dbm_hz", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.channel.noise_density_dbm_hz = need_double(v, l); }},
        {"channel.noise_figure_db", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.channel.noise_figure_db = need_double(v, l); }},
        {"channel.bandwidth_hz", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.channel.bandwidth_hz = need_double(v, l); }},
        {"costs.c_t", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.costs.c_t = need_double(v, l); }},
        {"costs.c_m", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.costs.c_m = need_double(v, l); }},
        {"costs.c_c", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.costs.c_c = need_double(v, l); }},
        {"costs.as_rate_fraction", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.costs.as_rate_fraction = need_bool(v, l); }},
        {"synth.mean_encounters", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.synth.mean_encounters = need_double(v, l); }},
        {"synth.duration_shape_min", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.synth.duration_shape_min = need_double(v, l); }},
        {"synth.duration_shape_max", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.synth.duration_shape_max = need_double(v, l); }},
        {"synth.mean_duration_s", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.synth.mean_duration_s = need_double(v, l); }},
        {"synth.distance_decay_m", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.synth.distance_decay_m = need_double(v, l); }},
        {"synth.observation_window_s", [](EpisodeConfig& c, std::string_view v, std::size_t l) { c.synth.observation_window_s = need_double(v, l); }},
    };
    return table;
}

} // namespace

EpisodeConfig parse_config(std::istream& in) {
    EpisodeConfig cfg;
    std::set<std::string> seen;
    std::string raw;
    std::size_t line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, "expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));

        auto it = setters().find(key);
        if (it == setters().end())
            throw ParseError(line_no, "unknown config key '" + key + "'");
        if (!seen.insert(key).second)
            throw ParseError(line_no, "duplicate config key '" + key + "'");
        it->second(cfg, value, line_no);
    }

    cfg.validate();
    return cfg;
}

EpisodeConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in);
}

std::string default_config_text() {
    EpisodeConfig d;
    std::ostringstream out;
    out << "n_users = " << d.n_users << '\n';
    out << "cell_radius_m = " << dtos(d.cell_radius_m) << '\n';
    out << "d2d_max_m = " << dtos(d.d2d_max_m) << "    # [assumed]\n";
    out << "alpha = " << dtos(d.alpha) << '\n';
    out << "w_t = " << dtos(d.w_t) << "    # [assumed]\n";
    out << "content_bits = " << dtos(d.content_bits) << "    # [assumed]\n";
    out << "min_separation_m = " << dtos(d.min_separation_m) << '\n';
    out << "seed = " << d.seed << '\n';
    out << "utility_form = " << (d.utility_form == UtilityForm::expected ? "expected" : "realized") << '\n';
    out << "channel.path_loss_exp = " << dtos(d.channel.path_loss_exp) << "    # [assumed]\n";
    out << "channel.p_enb_dbm = " << dtos(d.channel.p_enb_dbm) << '\n';
    out << "channel.p_ue_dbm = " << dtos(d.channel.p_ue_dbm) << '\n';
    out << "channel.gain_enb_dbi = " << dtos(d.channel.gain_enb_dbi) << '\n';
    out << "channel.gain_ue_dbi = " << dtos(d.channel.gain_ue_dbi) << '\n';
    out << "channel.noise_density_dbm_hz = " << dtos(d.channel.noise_density_dbm_hz) << '\n';
    out << "channel.noise_figure_db = " << dtos(d.channel.noise_figure_db) << '\n';
    out << "channel.bandwidth_hz = " << dtos(d.channel.bandwidth_hz) << "    # [assumed]\n";
    out << "costs.c_t = " << dtos(d.costs.c_t) << "    # [assumed]\n";
    out << "costs.c_m = " << dtos(d.costs.c_m) << "    # [assumed]\n";
    out << "costs.c_c = " << dtos(d.costs.c_c) << "    # [assumed]\n";
    out << "costs.as_rate_fraction = " << (d.costs.as_rate_fraction ? "true" : "false") << '\n';
    out << "synth.mean_encounters = " << dtos(d.synth.mean_encounters) << '\n';
    out << "synth.duration_shape_min = " << dtos(d.synth.duration_shape_min) << '\n';
    out << "synth.duration_shape_max = " << dtos(d.synth.duration_shape_max) << '\n';
    out << "synth.mean_duration_s = " << dtos(d.synth.mean_duration_s) << '\n';
    out << "synth.distance_decay_m = " << dtos(d.synth.distance_decay_m) << '\n';
    out << "synth.observation_window_s = " << dtos(d.synth.observation_window_s) << '\n';
    return out.str();
}

} // namespace d2d
