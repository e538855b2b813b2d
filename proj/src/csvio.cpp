#include "bohm/csvio.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace bohm {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("float formatting failed");
    return std::string(buf, ptr);
}

std::string render_result_csv(const ExperimentResult& result) {
    if (result.column_names.size() != result.columns.size())
        throw std::logic_error("result column names and columns disagree");
    const std::size_t rows = result.columns.empty() ? 0 : result.columns.front().size();
    for (const auto& column : result.columns)
        if (column.size() != rows) throw std::logic_error("result columns have unequal length");

    std::string out;
    out.reserve(32 * (rows + 1) * (result.columns.size() + 1));
    for (std::size_t c = 0; c < result.column_names.size(); ++c) {
        if (c) out += ',';
        out += result.column_names[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < result.columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(result.columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

std::string render_scalars_csv(const ExperimentResult& result) {
    std::string out = "name,value\n";
    for (const auto& [name, value] : result.scalars) {
        out += name;
        out += ',';
        out += format_double(value);
        out += '\n';
    }
    return out;
}

std::string render_manifest(const RunConfig& config) {
    std::string out;
    out += "# bohmsim run manifest (version ";
    out += kToolVersion;
    out += ")\n# feed this file back with --config to reproduce the run\n";
    for (const auto& [key, value] : config.entries()) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm);
    return buf;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

fs::path write_run_outputs(const fs::path& out_root, const RunConfig& config,
                           const ExperimentResult& result) {
    // Render everything first: serialization errors must not leave files behind.
    const std::string result_csv = render_result_csv(result);
    const std::string scalars_csv = render_scalars_csv(result);
    const std::string manifest = render_manifest(config);

    fs::create_directories(out_root);
    const std::string base =
        std::string(experiment_name(config.experiment())) + "_" + utc_timestamp();
    fs::path final_dir;
    for (int suffix = 1; suffix < 10000; ++suffix) {
        fs::path candidate = out_root / (suffix == 1 ? base : base + "_" + std::to_string(suffix));
        fs::path staging = candidate;
        staging += ".partial";
        if (fs::exists(candidate) || fs::exists(staging)) continue;
        final_dir = candidate;
        break;
    }
    if (final_dir.empty())
        throw std::runtime_error("cannot find a free output directory under " + out_root.string());

    fs::path staging = final_dir;
    staging += ".partial";
    try {
        fs::create_directory(staging);
        write_text_file(staging / "result.csv", result_csv);
        write_text_file(staging / "scalars.csv", scalars_csv);
        write_text_file(staging / "manifest.txt", manifest);
        fs::rename(staging, final_dir);
    } catch (...) {
        std::error_code ec;
        fs::remove_all(staging, ec);
        throw;
    }
    return final_dir;
}

}  // namespace bohm
