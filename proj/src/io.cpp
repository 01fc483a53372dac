#include "hyperpol/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "hyperpol/errors.hpp"

namespace hyperpol::io {

std::string format_g9(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error while reading " + path);
    return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("error while writing " + path);
}

std::string map_to_csv(const ReflectivityMap& map) {
    std::string out = "lambda_nm,theta_deg,R\n";
    const double rad_to_deg = 180.0 / pi;
    for (std::size_t i = 0; i < map.lambda.size(); ++i) {
        const std::string lam = format_g9(map.lambda[i] * 1e9);
        for (std::size_t j = 0; j < map.theta.size(); ++j) {
            out += lam;
            out += ',';
            out += format_g9(map.theta[j] * rad_to_deg);
            out += ',';
            out += format_g9(map.at(i, j));
            out += '\n';
        }
    }
    return out;
}

std::string sensing_curve_to_csv(const SensingCurve& curve) {
    std::string out = "C_molar,dip_count,lambda1_nm,lambda2_nm,Rmin1,splitting_meV\n";
    auto opt_nm = [](const std::optional<double>& v) {
        return v ? format_g9(*v * 1e9) : std::string();
    };
    auto opt_raw = [](const std::optional<double>& v) {
        return v ? format_g9(*v) : std::string();
    };
    for (const SensingRow& row : curve.rows) {
        out += format_g9(row.C);
        out += ',';
        out += std::to_string(row.dip_count);
        out += ',';
        out += opt_nm(row.lambda_1);
        out += ',';
        out += opt_nm(row.lambda_2);
        out += ',';
        out += opt_raw(row.R_min_1);
        out += ',';
        out += opt_raw(row.splitting_meV);
        out += '\n';
    }
    return out;
}

std::string reflectivity_to_csv(const std::vector<double>& lambda,
                                const std::vector<double>& R, const std::vector<double>& T) {
    std::string out = "lambda_nm,R,T\n";
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        out += format_g9(lambda[i] * 1e9);
        out += ',';
        out += format_g9(R[i]);
        out += ',';
        out += format_g9(T[i]);
        out += '\n';
    }
    return out;
}

namespace {

double parse_field(std::string_view field, std::string_view origin, std::size_t line_no,
                   const char* what) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw InvalidInput(std::string(origin) + ":" + std::to_string(line_no) +
                           ": cannot parse " + what + " from '" + std::string(field) + "'");
    return v;
}

}  // namespace

TabulatedModel parse_tabulated_csv(std::string_view text, std::string_view origin) {
    TabulatedModel model;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        // Trim spaces/tabs.
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        if (line_no == 1 && line.find("wavelength") != std::string_view::npos) continue;

        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos)
            throw InvalidInput(std::string(origin) + ":" + std::to_string(line_no) +
                               ": expected 3 comma-separated fields");
        const double nm =
            parse_field(line.substr(0, c1), origin, line_no, "wavelength_nm");
        const double re =
            parse_field(line.substr(c1 + 1, c2 - c1 - 1), origin, line_no, "eps_re");
        const double im = parse_field(line.substr(c2 + 1), origin, line_no, "eps_im");
        if (!(nm > 0.0))
            throw InvalidInput(std::string(origin) + ":" + std::to_string(line_no) +
                               ": wavelength must be > 0");
        if (!model.lambda.empty() && !(nm / 1e9 > model.lambda.back()))
            throw InvalidInput(std::string(origin) + ":" + std::to_string(line_no) +
                               ": wavelengths must be strictly increasing");
        model.lambda.push_back(nm / 1e9);
        model.eps.emplace_back(re, im);
    }
    if (model.lambda.size() < 2)
        throw InvalidInput(std::string(origin) + ": need at least 2 tabulated rows, got " +
                           std::to_string(model.lambda.size()));
    return model;
}

TabulatedModel load_tabulated_csv(const std::string& path) {
    return parse_tabulated_csv(read_text_file(path), path);
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace hyperpol::io
