#pragma once
// Run configuration: flat "key = value" files with '#' comments, a per-experiment
// schema (required keys, defaults, ranges), and flag overrides.  The resolved
// configuration echoes every key in schema order so that a run manifest can be
// fed back as a config file and reproduce the run byte for byte.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bohm/core.hpp"
#include "bohm/dynamics.hpp"

namespace bohm {

// Version string echoed into run manifests.
inline constexpr const char* kToolVersion = "1.0.0";

enum class ExperimentKind { brownian, diffraction, tunneling, early_arrivals };

// Subcommand / manifest name of an experiment ("early-arrivals" uses a hyphen).
const char* experiment_name(ExperimentKind kind);

// Inverse of experiment_name; throws ConfigError for unknown names.
ExperimentKind experiment_from_name(const std::string& name);

// Raised for every malformed, unknown, out-of-range, or missing configuration
// value; the message identifies the offending key and its source (file line or
// command-line flag).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ConfigType { real, unsigned_integer, keyword };

// One schema entry: the contract for a single configuration key.
struct ConfigKey {
    std::string name;
    ConfigType type = ConfigType::real;
    bool required = false;
    std::string default_value;            // literal text; ignored when required
    double min = 0.0;                     // numeric range (keyword keys ignore it)
    double max = 0.0;
    bool min_exclusive = false;
    bool max_exclusive = false;
    bool allow_auto = false;              // literal "auto" accepted besides numbers
    std::vector<std::string> keywords;    // allowed values for keyword keys
};

// Schema (ordered key list) for one experiment.  The order fixes the manifest
// layout.
const std::vector<ConfigKey>& config_schema(ExperimentKind kind);

// One raw key/value pair together with where it came from, for error messages.
struct RawEntry {
    std::string key;
    std::string value;
    std::string source;  // e.g. "config.txt line 3" or "flag --kT"
};

// Parse flat "key = value" text.  '#' starts a comment, blank lines are
// skipped, keys must be identifiers.  source_name labels errors.
std::vector<RawEntry> parse_key_value_text(const std::string& text,
                                           const std::string& source_name);

// Fully resolved configuration: every schema key has a value (user-supplied or
// default), validated against type, range, and keyword lists.
class RunConfig {
  public:
    RunConfig(ExperimentKind kind, std::vector<std::pair<std::string, std::string>> entries);

    ExperimentKind experiment() const { return kind_; }

    // Typed getters.  Keys must exist in the schema; numeric getters must not
    // be asked for a key currently holding "auto" (check is_auto first).
    double real(const std::string& key) const;
    std::uint64_t uinteger(const std::string& key) const;
    const std::string& keyword(const std::string& key) const;
    bool is_auto(const std::string& key) const;

    // All resolved entries in schema order, as written to the manifest.
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  private:
    const std::string& value_of(const std::string& key) const;

    ExperimentKind kind_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

// Merge file entries and flag overrides against the schema of `kind`, apply
// defaults, and validate everything.  Flags win over file values; unknown and
// duplicate keys are rejected; missing required keys are reported together
// with the full required list for the experiment.
RunConfig resolve_config(ExperimentKind kind, const std::vector<RawEntry>& file_entries,
                         const std::vector<RawEntry>& flag_entries);

// Keyword translations used by the drivers.
WidthVariant width_variant_from_keyword(const std::string& word);
NoiseKind noise_from_keyword(const std::string& word);

}  // namespace bohm
