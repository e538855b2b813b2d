#include "bohm/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace bohm {

namespace {

std::string bound_text(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string range_text(const ConfigKey& key) {
    std::string s;
    s += key.min_exclusive ? '(' : '[';
    s += bound_text(key.min) + ", " + bound_text(key.max);
    s += key.max_exclusive ? ')' : ']';
    return s;
}

std::string join(const std::vector<std::string>& words, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += sep;
        out += words[i];
    }
    return out;
}

// --- schema construction ---------------------------------------------------------

ConfigKey real_key(std::string name, std::string def, double lo, double hi,
                   bool lo_excl = false, bool hi_excl = false) {
    ConfigKey k;
    k.name = std::move(name);
    k.type = ConfigType::real;
    k.default_value = std::move(def);
    k.min = lo;
    k.max = hi;
    k.min_exclusive = lo_excl;
    k.max_exclusive = hi_excl;
    return k;
}

ConfigKey required_real(std::string name, double lo, double hi, bool lo_excl = false,
                        bool hi_excl = false) {
    ConfigKey k = real_key(std::move(name), "", lo, hi, lo_excl, hi_excl);
    k.required = true;
    return k;
}

ConfigKey uint_key(std::string name, std::string def, double lo, double hi) {
    ConfigKey k;
    k.name = std::move(name);
    k.type = ConfigType::unsigned_integer;
    k.default_value = std::move(def);
    k.min = lo;
    k.max = hi;
    return k;
}

ConfigKey keyword_key(std::string name, std::string def, std::vector<std::string> words) {
    ConfigKey k;
    k.name = std::move(name);
    k.type = ConfigType::keyword;
    k.default_value = std::move(def);
    k.keywords = std::move(words);
    return k;
}

void push_common_prefix(std::vector<ConfigKey>& keys, ExperimentKind kind) {
    keys.push_back(keyword_key("experiment", experiment_name(kind),
                               {"brownian", "diffraction", "tunneling", "early-arrivals"}));
    keys.push_back(uint_key("seed", "1", 0.0, 1.8446744073709552e19));
    ConfigKey threads = uint_key("threads", "auto", 1.0, 256.0);
    threads.allow_auto = true;
    keys.push_back(threads);
}

std::vector<ConfigKey> make_brownian_schema() {
    std::vector<ConfigKey> keys;
    push_common_prefix(keys, ExperimentKind::brownian);
    keys.push_back(real_key("mass", "1", 0.0, 1e6, true));
    keys.push_back(real_key("hbar", "1", 0.0, 1e6, true));
    keys.push_back(real_key("epsilon", "1", 0.0, 1.0));
    keys.push_back(required_real("gamma_r", 0.0, 1e3, true));
    keys.push_back(real_key("gamma_i", "0", -1e3, 1e3));
    keys.push_back(required_real("kT", 0.0, 1e6));
    keys.push_back(keyword_key("noise", "gaussian_white", {"gaussian_white", "none"}));
    keys.push_back(keyword_key("width_variant", "kostin",
                               {"kostin", "ck", "generalized", "complex"}));
    keys.push_back(real_key("q0", "0", -1e6, 1e6));
    keys.push_back(real_key("q_dot0", "0", -1e6, 1e6));
    keys.push_back(real_key("sigma0", "1", 0.0, 1e3, true));
    keys.push_back(real_key("sigma_dot0", "0", -1e3, 1e3));
    keys.push_back(real_key("t_end", "100", 0.0, 1e6, true));
    keys.push_back(real_key("dt", "0.01", 0.0, 10.0, true));
    keys.push_back(uint_key("n_tra", "10000", 1.0, 1e7));
    keys.push_back(uint_key("output_stride", "10", 1.0, 1e6));
    return keys;
}

std::vector<ConfigKey> make_diffraction_schema() {
    std::vector<ConfigKey> keys;
    push_common_prefix(keys, ExperimentKind::diffraction);
    keys.push_back(real_key("mass", "1", 0.0, 1e6, true));
    keys.push_back(real_key("hbar", "1", 0.0, 1e6, true));
    keys.push_back(real_key("epsilon", "1", 0.0, 1.0));
    keys.push_back(required_real("gamma_r", 0.0, 1e3));
    keys.push_back(real_key("p", "1", 0.0, 1e6, true));
    keys.push_back(real_key("x_obs", "1", 0.0, 1e6));
    keys.push_back(real_key("t_end", "20", 0.0, 1e6, true));
    keys.push_back(real_key("dt", "0.001", 0.0, 10.0, true));
    keys.push_back(uint_key("output_stride", "1", 1.0, 1e6));
    return keys;
}

std::vector<ConfigKey> make_tunneling_schema() {
    std::vector<ConfigKey> keys;
    push_common_prefix(keys, ExperimentKind::tunneling);
    keys.push_back(real_key("mass", "1", 0.0, 1e6, true));
    keys.push_back(real_key("hbar", "1", 0.0, 1e6, true));
    keys.push_back(real_key("epsilon", "1", 0.0, 1.0));
    keys.push_back(required_real("gamma_r", 0.0, 1e3));
    keys.push_back(keyword_key("width_variant", "kostin", {"kostin", "ck"}));
    keys.push_back(real_key("x0", "-10", -1e6, 0.0, false, true));
    keys.push_back(real_key("p0", "1", -1e6, 1e6));
    keys.push_back(real_key("omega", "0.2", 0.0, 1e3, true));
    keys.push_back(real_key("E0", "0", -1e6, 1e6));
    keys.push_back(real_key("omega0", "0", 0.0, 1e3));
    keys.push_back(real_key("phi", "0", -10.0, 10.0));
    keys.push_back(real_key("charge", "-1", -1e3, 1e3));
    keys.push_back(real_key("sigma0", "1", 0.0, 1e3, true));
    keys.push_back(real_key("sigma_dot0", "0", -1e3, 1e3));
    keys.push_back(real_key("t_end", "150", 0.0, 1e6, true));
    keys.push_back(real_key("dt", "0.001", 0.0, 10.0, true));
    keys.push_back(keyword_key("scan", "none", {"none", "omega0", "E0", "epsilon", "gamma_r"}));
    keys.push_back(real_key("scan_min", "0", -1e6, 1e6));
    ConfigKey scan_max = real_key("scan_max", "auto", -1e6, 1e6);
    scan_max.allow_auto = true;
    keys.push_back(scan_max);
    keys.push_back(uint_key("scan_points", "61", 3.0, 100000.0));
    keys.push_back(uint_key("output_stride", "10", 1.0, 1e6));
    return keys;
}

std::vector<ConfigKey> make_early_arrivals_schema() {
    std::vector<ConfigKey> keys;
    push_common_prefix(keys, ExperimentKind::early_arrivals);
    keys.push_back(real_key("mass", "1", 0.0, 1e6, true));
    keys.push_back(real_key("hbar", "1", 0.0, 1e6, true));
    keys.push_back(real_key("epsilon", "1", 0.0, 1.0));
    keys.push_back(required_real("gamma_r", 0.0, 1e3));
    keys.push_back(real_key("gamma_i", "0", -1e3, 1e3));
    keys.push_back(required_real("kT", 0.0, 1e6));
    keys.push_back(keyword_key("noise", "gaussian_white", {"gaussian_white", "none"}));
    keys.push_back(required_real("omega", 0.0, 1e3, true));
    keys.push_back(real_key("g", "1", 0.0, 1e6, true));
    ConfigKey t_b = real_key("t_B", "6", 0.0, 1e6);
    t_b.allow_auto = true;
    keys.push_back(t_b);
    keys.push_back(real_key("x_d", "10", -1e6, 1e6));
    keys.push_back(real_key("q0", "-10", -1e6, 1e6));
    keys.push_back(real_key("q_dot0", "1", -1e6, 1e6));
    keys.push_back(real_key("sigma0", "1", 0.0, 1e3, true));
    keys.push_back(real_key("sigma_dot0", "0", -1e3, 1e3));
    keys.push_back(real_key("t_end", "50", 0.0, 1e6, true));
    keys.push_back(real_key("dt", "0.005", 0.0, 10.0, true));
    keys.push_back(uint_key("n_tra", "10000", 1.0, 1e7));
    keys.push_back(uint_key("output_stride", "10", 1.0, 1e6));
    return keys;
}

// --- value validation ------------------------------------------------------------

double parse_real_checked(const ConfigKey& key, const std::string& text,
                          const std::string& source) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("key '" + key.name + "': cannot parse '" + text + "' as a number (" +
                          source + ")");
    if (!std::isfinite(v))
        throw ConfigError("key '" + key.name + "': value must be finite (" + source + ")");
    const bool below = key.min_exclusive ? v <= key.min : v < key.min;
    const bool above = key.max_exclusive ? v >= key.max : v > key.max;
    if (below || above)
        throw ConfigError("key '" + key.name + "': value " + text +
                          " out of range; valid range is " + range_text(key) + " (" + source +
                          ")");
    return v;
}

std::uint64_t parse_uint_checked(const ConfigKey& key, const std::string& text,
                                 const std::string& source) {
    std::uint64_t v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("key '" + key.name + "': cannot parse '" + text +
                          "' as an unsigned integer (" + source + ")");
    const double dv = static_cast<double>(v);
    if (dv < key.min || dv > key.max)
        throw ConfigError("key '" + key.name + "': value " + text +
                          " out of range; valid range is " + range_text(key) + " (" + source +
                          ")");
    return v;
}

void validate_value(const ConfigKey& key, const std::string& text, const std::string& source) {
    if (key.allow_auto && text == "auto") return;
    switch (key.type) {
        case ConfigType::real:
            parse_real_checked(key, text, source);
            return;
        case ConfigType::unsigned_integer:
            parse_uint_checked(key, text, source);
            return;
        case ConfigType::keyword:
            if (std::find(key.keywords.begin(), key.keywords.end(), text) == key.keywords.end())
                throw ConfigError("key '" + key.name + "': unknown value '" + text +
                                  "'; allowed values: " + join(key.keywords, ", ") + " (" +
                                  source + ")");
            return;
    }
    throw std::logic_error("unhandled config type");
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::brownian: return "brownian";
        case ExperimentKind::diffraction: return "diffraction";
        case ExperimentKind::tunneling: return "tunneling";
        case ExperimentKind::early_arrivals: return "early-arrivals";
    }
    throw std::logic_error("unhandled experiment kind");
}

ExperimentKind experiment_from_name(const std::string& name) {
    if (name == "brownian") return ExperimentKind::brownian;
    if (name == "diffraction") return ExperimentKind::diffraction;
    if (name == "tunneling") return ExperimentKind::tunneling;
    if (name == "early-arrivals") return ExperimentKind::early_arrivals;
    throw ConfigError("unknown experiment '" + name +
                      "'; expected brownian, diffraction, tunneling, or early-arrivals");
}

const std::vector<ConfigKey>& config_schema(ExperimentKind kind) {
    static const std::vector<ConfigKey> brownian = make_brownian_schema();
    static const std::vector<ConfigKey> diffraction = make_diffraction_schema();
    static const std::vector<ConfigKey> tunneling = make_tunneling_schema();
    static const std::vector<ConfigKey> early = make_early_arrivals_schema();
    switch (kind) {
        case ExperimentKind::brownian: return brownian;
        case ExperimentKind::diffraction: return diffraction;
        case ExperimentKind::tunneling: return tunneling;
        case ExperimentKind::early_arrivals: return early;
    }
    throw std::logic_error("unhandled experiment kind");
}

std::vector<RawEntry> parse_key_value_text(const std::string& text,
                                           const std::string& source_name) {
    std::vector<RawEntry> entries;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string where = source_name + " line " + std::to_string(line_no);
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("malformed line (expected 'key = value'): '" + line + "' (" +
                              where + ")");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!is_identifier(key))
            throw ConfigError("malformed key '" + key + "' (" + where + ")");
        if (value.empty())
            throw ConfigError("key '" + key + "' has no value (" + where + ")");
        entries.push_back(RawEntry{key, value, where});
    }
    return entries;
}

RunConfig resolve_config(ExperimentKind kind, const std::vector<RawEntry>& file_entries,
                         const std::vector<RawEntry>& flag_entries) {
    const std::vector<ConfigKey>& schema = config_schema(kind);
    std::map<std::string, const ConfigKey*> by_name;
    for (const ConfigKey& key : schema) by_name[key.name] = &key;

    std::map<std::string, std::pair<std::string, std::string>> chosen;  // key -> (value, source)
    for (const RawEntry& entry : file_entries) {
        const auto it = by_name.find(entry.key);
        if (it == by_name.end())
            throw ConfigError("unknown key '" + entry.key + "' for experiment " +
                              experiment_name(kind) + " (" + entry.source + ")");
        if (chosen.count(entry.key))
            throw ConfigError("duplicate key '" + entry.key + "' (" + entry.source +
                              "; first set at " + chosen[entry.key].second + ")");
        chosen[entry.key] = {entry.value, entry.source};
    }
    // Flags override file values; a repeated flag keeps its last occurrence.
    for (const RawEntry& entry : flag_entries) {
        const auto it = by_name.find(entry.key);
        if (it == by_name.end())
            throw ConfigError("unknown key '" + entry.key + "' for experiment " +
                              experiment_name(kind) + " (" + entry.source + ")");
        chosen[entry.key] = {entry.value, entry.source};
    }

    std::vector<std::string> missing;
    std::vector<std::string> required;
    for (const ConfigKey& key : schema) {
        if (key.required) required.push_back(key.name);
        if (key.required && !chosen.count(key.name)) missing.push_back(key.name);
    }
    if (!missing.empty())
        throw ConfigError("missing required keys for " + std::string(experiment_name(kind)) +
                          ": " + join(missing, ", ") +
                          " (required keys: " + join(required, ", ") + ")");

    std::vector<std::pair<std::string, std::string>> resolved;
    resolved.reserve(schema.size());
    for (const ConfigKey& key : schema) {
        const auto it = chosen.find(key.name);
        const std::string value = it == chosen.end() ? key.default_value : it->second.first;
        const std::string source = it == chosen.end() ? "default" : it->second.second;
        validate_value(key, value, source);
        resolved.emplace_back(key.name, value);
    }

    RunConfig config(kind, std::move(resolved));

    if (config.keyword("experiment") != experiment_name(kind))
        throw ConfigError("config is for experiment '" + config.keyword("experiment") +
                          "' but the subcommand is '" + experiment_name(kind) + "'");
    const double dt = config.real("dt");
    const double t_end = config.real("t_end");
    if (t_end < dt) throw ConfigError("t_end must be at least dt");
    if (t_end / dt > 1e8)
        throw ConfigError("t_end / dt exceeds 1e8 grid steps; choose a coarser dt");
    if (kind == ExperimentKind::tunneling) {
        const std::string scan = config.keyword("scan");
        if (scan != "none") {
            if (config.is_auto("scan_max") && scan != "omega0")
                throw ConfigError("scan_max = auto is only available for the omega0 scan; "
                                  "set scan_max explicitly");
            const double lo = config.real("scan_min");
            const double hi = config.is_auto("scan_max") ? 3.0 * config.real("omega")
                                                         : config.real("scan_max");
            if (!(lo < hi)) throw ConfigError("scan_min must be smaller than scan_max");
            if (scan == "epsilon" && (lo < 0.0 || hi > 1.0))
                throw ConfigError("epsilon scan bounds must lie within [0, 1]");
            if (scan == "gamma_r" && lo < 0.0)
                throw ConfigError("gamma_r scan bounds must be nonnegative");
        }
    }
    return config;
}

RunConfig::RunConfig(ExperimentKind kind, std::vector<std::pair<std::string, std::string>> entries)
    : kind_(kind), entries_(std::move(entries)) {}

const std::string& RunConfig::value_of(const std::string& key) const {
    for (const auto& [name, value] : entries_)
        if (name == key) return value;
    throw std::logic_error("config key '" + key + "' is not in the schema of " +
                           experiment_name(kind_));
}

double RunConfig::real(const std::string& key) const {
    const std::string& text = value_of(key);
    if (text == "auto")
        throw std::logic_error("config key '" + key + "' is set to auto; resolve it first");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::logic_error("config key '" + key + "' does not hold a number");
    return v;
}

std::uint64_t RunConfig::uinteger(const std::string& key) const {
    const std::string& text = value_of(key);
    if (text == "auto")
        throw std::logic_error("config key '" + key + "' is set to auto; resolve it first");
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::logic_error("config key '" + key + "' does not hold an unsigned integer");
    return v;
}

const std::string& RunConfig::keyword(const std::string& key) const { return value_of(key); }

bool RunConfig::is_auto(const std::string& key) const { return value_of(key) == "auto"; }

WidthVariant width_variant_from_keyword(const std::string& word) {
    if (word == "kostin") return WidthVariant::kostin_scaled;
    if (word == "ck") return WidthVariant::ck_scaled;
    if (word == "generalized") return WidthVariant::generalized_gamma_i;
    if (word == "complex") return WidthVariant::complex_friction;
    throw ConfigError("unknown width variant '" + word + "'");
}

NoiseKind noise_from_keyword(const std::string& word) {
    if (word == "gaussian_white") return NoiseKind::gaussian_white;
    if (word == "none") return NoiseKind::none;
    throw ConfigError("unknown noise kind '" + word + "'");
}

}  // namespace bohm
