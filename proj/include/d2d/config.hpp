#pragma once

#include <iosfwd>
#include <string>

#include "d2d/engine.hpp"

namespace d2d {

// Reads a flat key = value episode configuration. Keys mirror the
// EpisodeConfig fields, with nested structs addressed by dots
// (channel.bandwidth_hz, costs.c_c, synth.mean_duration_s, ...). '#' starts
// a comment and blank lines are skipped. Unknown or repeated keys and
// malformed values raise ParseError with the offending line number; the
// resulting config is validated before being returned.
EpisodeConfig parse_config(std::istream& in);
EpisodeConfig parse_config_file(const std::string& path);

// The key table as "key = value" lines with current defaults, used by the
// CLI to print a reference config.
std::string default_config_text();

} // namespace d2d
