#pragma once
// CSV and manifest serialization plus staged run-directory output.  Floats are
// written in their shortest round-trip form so identical doubles always yield
// identical bytes, which makes rerun comparisons a plain file diff.

#include <filesystem>
#include <string>

#include "bohm/config.hpp"
#include "bohm/experiments.hpp"

namespace bohm {

// Shortest decimal text that parses back to exactly v.
std::string format_double(double v);

// Header row plus one line per grid sample; columns in declaration order.
std::string render_result_csv(const ExperimentResult& result);

// "name,value" header plus one line per summary scalar, in driver order.
std::string render_scalars_csv(const ExperimentResult& result);

// Version-stamped echo of every resolved config key in schema order; valid as
// a config file, and feeding it back reproduces the run byte for byte.
std::string render_manifest(const RunConfig& config);

// Write result.csv, scalars.csv, and manifest.txt into a fresh directory
// <out_root>/<experiment>_<UTC timestamp>/ (a numeric suffix resolves
// collisions).  Files are staged in a ".partial" directory that is renamed
// into place only after every write succeeded; on failure the staging
// directory is removed so no output appears.  Returns the final directory.
std::filesystem::path write_run_outputs(const std::filesystem::path& out_root,
                                        const RunConfig& config,
                                        const ExperimentResult& result);

}  // namespace bohm
