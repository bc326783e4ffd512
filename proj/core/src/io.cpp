#include "latred/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "latred/rng.hpp"

namespace latred {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json matrix_to_json(const ComplexMatrix& M) {
    const int n = static_cast<int>(M.rows());
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < static_cast<int>(M.cols()); ++j) {
            re.push_back(M(i, j).real());
            im.push_back(M(i, j).imag());
        }
    }
    return {{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im"))
        throw InvalidInputError("matrix JSON must contain \"n\", \"re\" and \"im\"");
    const int n = j.at("n").get<int>();
    if (n < 1) throw InvalidInputError("matrix JSON: n must be positive");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const std::size_t need = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    if (re.size() != need || im.size() != need)
        throw InvalidInputError("matrix JSON: re/im must hold n*n row-major values");
    ComplexMatrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int jc = 0; jc < n; ++jc) {
            const std::size_t k = static_cast<std::size_t>(i) * n + jc;
            M(i, jc) = Complex(re.at(k).get<double>(), im.at(k).get<double>());
        }
    return M;
}

nlohmann::json gaussian_matrix_to_json(const GaussianIntMatrix& Z) {
    auto to_ll = [](const BigInt& v) {
        static const BigInt lo = std::numeric_limits<long long>::min();
        static const BigInt hi = std::numeric_limits<long long>::max();
        if (v < lo || v > hi)
            throw NumericError("gaussian matrix entry exceeds 64-bit range");
        return v.convert_to<long long>();
    };
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < Z.n(); ++i)
        for (int j = 0; j < Z.n(); ++j) {
            re.push_back(to_ll(Z(i, j).re));
            im.push_back(to_ll(Z(i, j).im));
        }
    return {{"n", Z.n()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

GaussianIntMatrix gaussian_matrix_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    if (n < 1) throw InvalidInputError("gaussian matrix JSON: n must be positive");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    GaussianIntMatrix Z(n);
    for (int i = 0; i < n; ++i)
        for (int jc = 0; jc < n; ++jc) {
            const std::size_t k = static_cast<std::size_t>(i) * n + jc;
            Z(i, jc) = GaussianInt(re.at(k).get<long long>(), im.at(k).get<long long>());
        }
    return Z;
}

namespace {

// Parses "a", "bi", "a+bi", "a-bi" (also with "j"), exponents allowed.
Complex parse_complex_token(const std::string& tok, int line, int col) {
    auto fail = [&]() -> Complex {
        std::ostringstream os;
        os << "matrix parse error at line " << line << ", column " << col
           << ": bad complex token '" << tok << "'";
        throw InvalidInputError(os.str());
    };
    if (tok.empty()) return fail();

    auto parse_real = [&](std::string_view sv, double& out) {
        if (sv == "+" || sv.empty()) {
            out = 1.0;
            return true;
        }
        if (sv == "-") {
            out = -1.0;
            return true;
        }
        const char* b = sv.data();
        const char* e = sv.data() + sv.size();
        auto [p, ec] = std::from_chars(b, e, out);
        return ec == std::errc() && p == e;
    };

    std::string_view s(tok);
    const bool has_imag = s.back() == 'i' || s.back() == 'j';
    if (!has_imag) {
        double re;
        if (!parse_real(s, re)) return fail();
        return {re, 0.0};
    }
    s.remove_suffix(1);
    // split at the last top-level +/- (not the leading sign, not an exponent)
    std::size_t split = std::string_view::npos;
    for (std::size_t p = s.size(); p-- > 1;) {
        if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    if (split == std::string_view::npos) {
        double im;
        if (!parse_real(s, im)) return fail();
        return {0.0, im};
    }
    double re, im;
    if (!parse_real(s.substr(0, split), re)) return fail();
    if (!parse_real(s.substr(split), im)) return fail();
    return {re, im};
}

ComplexMatrix read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open matrix file: " + path.string());
    std::vector<std::vector<Complex>> rows;
    std::string linebuf;
    int lineno = 0;
    while (std::getline(in, linebuf)) {
        ++lineno;
        if (linebuf.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::vector<Complex> row;
        std::size_t pos = 0;
        while (pos <= linebuf.size()) {
            std::size_t comma = linebuf.find(',', pos);
            if (comma == std::string::npos) comma = linebuf.size();
            std::string tok = linebuf.substr(pos, comma - pos);
            const std::size_t first = tok.find_first_not_of(" \t\r");
            const std::size_t last = tok.find_last_not_of(" \t\r");
            tok = first == std::string::npos ? std::string()
                                             : tok.substr(first, last - first + 1);
            row.push_back(parse_complex_token(tok, lineno, static_cast<int>(pos) + 1));
            if (comma == linebuf.size()) break;
            pos = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidInputError("matrix file is empty: " + path.string());
    const std::size_t n = rows.size();
    for (std::size_t i = 0; i < n; ++i)
        if (rows[i].size() != n)
            throw InvalidInputError("matrix file is not square at line " +
                                    std::to_string(i + 1));
    ComplexMatrix M(static_cast<int>(n), static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return M;
}

}  // namespace

ComplexMatrix read_matrix(const std::filesystem::path& path) {
    if (path.extension() == ".json") {
        std::ifstream in(path);
        if (!in) throw InvalidInputError("cannot open matrix file: " + path.string());
        nlohmann::json j = nlohmann::json::parse(in);  // throws with position info
        return matrix_from_json(j);
    }
    return read_matrix_csv(path);
}

void write_matrix_json(const std::filesystem::path& path, const ComplexMatrix& M) {
    write_text_file(path, matrix_to_json(M).dump(2) + "\n");
}

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

Histogram make_histogram(std::span<const double> values, double bin_width) {
    if (!(bin_width > 0.0)) throw InvalidInputError("histogram: bin width must be > 0");
    Histogram h;
    h.bin_width = bin_width;
    if (values.empty()) return h;
    double mn = values[0], mx = values[0];
    for (double v : values) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    h.lo = std::floor(mn / bin_width) * bin_width;
    const auto last = static_cast<std::size_t>(std::floor((mx - h.lo) / bin_width));
    h.counts.assign(last + 1, 0);
    for (double v : values) {
        auto idx = static_cast<std::size_t>(std::floor((v - h.lo) / bin_width));
        if (idx >= h.counts.size()) idx = h.counts.size() - 1;
        ++h.counts[idx];
    }
    return h;
}

Histogram make_histogram_anchored(std::span<const double> values, double lo,
                                  double bin_width, std::size_t nbins) {
    if (!(bin_width > 0.0) || nbins == 0)
        throw InvalidInputError("histogram: bad bin spec");
    Histogram h;
    h.lo = lo;
    h.bin_width = bin_width;
    h.counts.assign(nbins, 0);
    for (double v : values) {
        double f = std::floor((v - lo) / bin_width);
        if (f < 0) f = 0;
        auto idx = static_cast<std::size_t>(f);
        if (idx >= nbins) idx = nbins - 1;
        ++h.counts[idx];
    }
    return h;
}

void write_histogram_csv(const std::filesystem::path& path, const Histogram& h) {
    std::ostringstream os;
    os << "bin_left,bin_right,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        os << format_double(h.bin_left(i)) << ',' << format_double(h.bin_right(i)) << ','
           << h.counts[i] << '\n';
    write_text_file(path, os.str());
}

void write_histogram2_csv(const std::filesystem::path& path, const Histogram& h,
                          const Histogram& secondary, const std::string& label2) {
    if (secondary.counts.size() != h.counts.size())
        throw InvalidInputError("histogram2: bin count mismatch");
    std::ostringstream os;
    os << "bin_left,bin_right,count," << label2 << "\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        os << format_double(h.bin_left(i)) << ',' << format_double(h.bin_right(i)) << ','
           << h.counts[i] << ',' << secondary.counts[i] << '\n';
    write_text_file(path, os.str());
}

std::uint64_t file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open file for digest: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    const std::string bytes = os.str();
    return fnv1a64(bytes.data(), bytes.size());
}

nlohmann::json make_manifest(const std::string& command, const nlohmann::json& config,
                             std::uint64_t seed,
                             const std::vector<std::filesystem::path>& inputs) {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config;
    j["seed"] = seed;
    j["toolkit_version"] = kToolkitVersion;

    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char ts[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(ts, sizeof(ts), "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["timestamp"] = ts;

    nlohmann::json ins = nlohmann::json::array();
    for (const auto& p : inputs)
        ins.push_back({{"path", p.string()}, {"fnv1a64", file_digest(p)}});
    j["inputs"] = std::move(ins);
    return j;
}

void write_manifest(const std::filesystem::path& path, const nlohmann::json& manifest) {
    write_text_file(path, manifest.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot open file for writing: " + path.string());
    out << contents;
    if (!out) throw InvalidInputError("failed writing file: " + path.string());
}

}  // namespace latred
