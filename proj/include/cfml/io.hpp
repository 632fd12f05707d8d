#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfml/enumerator.hpp"
#include "cfml/equidist.hpp"
#include "cfml/heuristic.hpp"

namespace cfml::io {

/// Locale-independent "%.9g".
std::string format_real(double value);

/// Writes content to a sibling temp file, then renames it over path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

std::string sha256_hex(const std::string& bytes);

// CSV schemas. All use a header row, LF line endings and one row per index.

/// "n,mult,ball", one row per n in [2, N].
std::string mult_csv(const TallyTable& tally);

/// Inverse of mult_csv. Throws ParseError naming the offending line.
TallyTable parse_mult_csv(const std::string& text);

/// "n,mult,heuristic,singular,ratio".
std::string compare_csv(std::span<const ComparisonRecord> records);

/// "m,largest_abs_error,normalized_error", one row per m in [1, M].
std::string equidist_csv(const ResidueHistogram& h);

struct ScatterOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::optional<double> reference_y;  // horizontal guide line
    int width = 800;
    int height = 500;
};

/// Static SVG 1.1 scatter chart, one <circle> per point. Axis ranges follow
/// the data with 5% margins.
std::string scatter_svg(std::span<const double> xs, std::span<const double> ys,
                        const ScatterOptions& options);

struct OutputFile {
    std::string path;
    std::string sha256;
};

struct RunManifest {
    std::string command;
    std::optional<int> alphabet;
    std::optional<std::uint64_t> max_n;
    std::optional<int> moduli;
    std::optional<double> window;
    std::optional<int> threads;
    std::vector<OutputFile> outputs;
    double seconds = 0.0;
};

std::string manifest_json(const RunManifest& manifest);

/// Path of the manifest written next to a data file: mult.csv -> mult.manifest.json.
std::filesystem::path manifest_path_for(const std::filesystem::path& data_path);

}  // namespace cfml::io
