#include "cfml/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include <openssl/evp.h>

#include "cfml/errors.hpp"

namespace cfml::io {

namespace fs = std::filesystem;

std::string format_real(double value) {
    // snprintf honours LC_NUMERIC; the process never changes it from "C".
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw IoError("sha256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int k = 0; k < length; ++k) {
        out.push_back(kHex[digest[k] >> 4]);
        out.push_back(kHex[digest[k] & 0xf]);
    }
    return out;
}

std::string mult_csv(const TallyTable& tally) {
    std::string out = "n,mult,ball\n";
    out.reserve(out.size() + 24 * tally.bound());
    for (std::uint64_t n = 2; n <= tally.bound(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += std::to_string(tally.mult(n));
        out += ',';
        out += std::to_string(tally.ball(n));
        out += '\n';
    }
    return out;
}

namespace {

std::uint64_t parse_field(std::string_view field, std::size_t line, const char* name) {
    std::uint64_t value = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end || field.empty()) {
        throw ParseError(line, std::string("bad ") + name + " field '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

TallyTable parse_mult_csv(const std::string& text) {
    std::vector<std::uint64_t> mult{0, 0};
    std::uint64_t running = 0;
    std::size_t line = 0;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) {
            throw ParseError(line + 1, "missing trailing newline");
        }
        std::string_view row(text.data() + pos, eol - pos);
        pos = eol + 1;
        ++line;
        if (!saw_header) {
            if (row != "n,mult,ball") {
                throw ParseError(line, "expected header 'n,mult,ball'");
            }
            saw_header = true;
            continue;
        }
        const auto c1 = row.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
            throw ParseError(line, "expected three comma-separated fields");
        }
        const auto n = parse_field(row.substr(0, c1), line, "n");
        const auto m = parse_field(row.substr(c1 + 1, c2 - c1 - 1), line, "mult");
        const auto b = parse_field(row.substr(c2 + 1), line, "ball");
        if (n != mult.size()) {
            throw ParseError(line, "expected n = " + std::to_string(mult.size()) + ", got " +
                                       std::to_string(n));
        }
        running += m;
        if (b != running) {
            throw ParseError(line, "ball " + std::to_string(b) + " is not the running sum " +
                                       std::to_string(running));
        }
        mult.push_back(m);
    }
    if (!saw_header) {
        throw ParseError(1, "empty file");
    }
    if (mult.size() < 3) {
        throw ParseError(line, "no data rows");
    }
    return TallyTable::from_mult(std::move(mult));
}

std::string compare_csv(std::span<const ComparisonRecord> records) {
    std::string out = "n,mult,heuristic,singular,ratio\n";
    out.reserve(out.size() + 56 * records.size());
    for (const auto& r : records) {
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.exact_mult);
        out += ',';
        out += format_real(r.heuristic);
        out += ',';
        out += format_real(r.singular);
        out += ',';
        out += format_real(r.ratio);
        out += '\n';
    }
    return out;
}

std::string equidist_csv(const ResidueHistogram& h) {
    std::string out = "m,largest_abs_error,normalized_error\n";
    for (int m = 1; m <= h.max_modulus(); ++m) {
        out += std::to_string(m);
        out += ',';
        out += format_real(largest_error(h, m));
        out += ',';
        out += format_real(normalized_largest_error(h, m));
        out += '\n';
    }
    return out;
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c; break;
        }
    }
    return out;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

struct Range {
    double lo;
    double hi;
};

// Data extent with 5% margins on both sides.
Range padded(std::span<const double> values, std::optional<double> extra) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (extra) {
        lo = std::min(lo, *extra);
        hi = std::max(hi, *extra);
    }
    if (!std::isfinite(lo)) return {0.0, 1.0};
    double span = hi - lo;
    if (span == 0.0) span = std::max(std::abs(lo), 1.0);
    return {lo - 0.05 * span, hi + 0.05 * span};
}

}  // namespace

std::string scatter_svg(std::span<const double> xs, std::span<const double> ys,
                        const ScatterOptions& options) {
    if (xs.size() != ys.size()) {
        throw ArgumentError("scatter needs equally many x and y values");
    }
    const double left = 70.0;
    const double right = 40.0;
    const double top = 40.0;
    const double bottom = 50.0;
    const double plot_w = options.width - left - right;
    const double plot_h = options.height - top - bottom;
    const Range xr = padded(xs, std::nullopt);
    const Range yr = padded(ys, options.reference_y);
    auto map_x = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto map_y = [&](double y) { return top + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * plot_h; };

    std::string svg;
    svg.reserve(512 + 48 * xs.size());
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(options.width) + "\" height=\"" + std::to_string(options.height) +
           "\" viewBox=\"0 0 " + std::to_string(options.width) + " " +
           std::to_string(options.height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(options.width) + "\" height=\"" +
           std::to_string(options.height) + "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + px(options.width / 2.0) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           xml_escape(options.title) + "</text>\n";

    // Frame and ticks.
    svg += "<g stroke=\"black\" fill=\"none\" stroke-width=\"1\">\n";
    svg += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" + px(plot_w) +
           "\" height=\"" + px(plot_h) + "\"/>\n";
    svg += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    constexpr int kTicks = 5;
    for (int k = 0; k <= kTicks; ++k) {
        const double fx = xr.lo + (xr.hi - xr.lo) * k / kTicks;
        const double fy = yr.lo + (yr.hi - yr.lo) * k / kTicks;
        svg += "<text x=\"" + px(map_x(fx)) + "\" y=\"" + px(top + plot_h + 16) +
               "\" text-anchor=\"middle\">" + tick_label(fx) + "</text>\n";
        svg += "<text x=\"" + px(left - 6) + "\" y=\"" + px(map_y(fy) + 4) +
               "\" text-anchor=\"end\">" + tick_label(fy) + "</text>\n";
    }
    svg += "<text x=\"" + px(left + plot_w / 2) + "\" y=\"" + px(options.height - 10.0) +
           "\" text-anchor=\"middle\">" + xml_escape(options.x_label) + "</text>\n";
    svg += "<text x=\"16\" y=\"" + px(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           px(top + plot_h / 2) + ")\">" + xml_escape(options.y_label) + "</text>\n";
    svg += "</g>\n";

    if (options.reference_y) {
        const std::string y = px(map_y(*options.reference_y));
        svg += "<line class=\"reference\" x1=\"" + px(left) + "\" y1=\"" + y + "\" x2=\"" +
               px(left + plot_w) + "\" y2=\"" + y +
               "\" stroke=\"firebrick\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    }

    const char* radius = xs.size() < 1000 ? "3" : "1.5";
    svg += "<g class=\"points\" fill=\"steelblue\" fill-opacity=\"0.6\">\n";
    for (std::size_t k = 0; k < xs.size(); ++k) {
        svg += "<circle cx=\"" + px(map_x(xs[k])) + "\" cy=\"" + px(map_y(ys[k])) + "\" r=\"" + radius + "\"/>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

std::string manifest_json(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["command"] = manifest.command;
    auto put = [&](const char* key, const auto& value) {
        if (value) {
            j[key] = *value;
        } else {
            j[key] = nullptr;
        }
    };
    put("alphabet", manifest.alphabet);
    put("max_n", manifest.max_n);
    put("moduli", manifest.moduli);
    put("window", manifest.window);
    put("threads", manifest.threads);
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& out : manifest.outputs) {
        j["outputs"].push_back({{"path", out.path}, {"sha256", out.sha256}});
    }
    j["seconds"] = manifest.seconds;
    return j.dump(2) + "\n";
}

fs::path manifest_path_for(const fs::path& data_path) {
    fs::path p = data_path;
    p.replace_extension(".manifest.json");
    return p;
}

}  // namespace cfml::io
