#include "pathsum/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pathsum/errors.hpp"
#include "pathsum/matrix.hpp"

namespace pathsum {

namespace {

struct Token {
    std::string text;
    int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    lines.push_back(std::move(cur));
    return lines;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class pow10z(size_t k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return p;
}

/// One real part, optionally signed: integer, p/q, or decimal with exponent.
bool parse_part_exact(const std::string& s, mpq_class& out) {
    if (s.empty()) return false;
    size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = (s[i] == '-');
        ++i;
    }
    std::string body = s.substr(i);
    if (body.empty()) return false;

    size_t slash = body.find('/');
    if (slash != std::string::npos) {
        std::string p = body.substr(0, slash);
        std::string q = body.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) return false;
        mpq_class v(body, 10);  // explicit base: GMP's default auto-detect reads 0-prefixes as octal
        if (v.get_den() == 0) return false;
        v.canonicalize();
        out = neg ? mpq_class(-v) : v;
        return true;
    }

    // decimal: digits [. digits] [e|E [sign] digits], at least one mantissa digit
    std::string intpart, fracpart, exppart;
    bool expneg = false;
    size_t j = 0;
    while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) intpart += body[j++];
    if (j < body.size() && body[j] == '.') {
        ++j;
        while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) fracpart += body[j++];
    }
    if (intpart.empty() && fracpart.empty()) return false;
    if (j < body.size() && (body[j] == 'e' || body[j] == 'E')) {
        ++j;
        if (j < body.size() && (body[j] == '+' || body[j] == '-')) {
            expneg = (body[j] == '-');
            ++j;
        }
        while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) exppart += body[j++];
        if (exppart.empty()) return false;
    }
    if (j != body.size()) return false;

    mpz_class num((intpart.empty() ? "0" : intpart) + fracpart, 10);
    mpz_class den = pow10z(fracpart.size());
    if (!exppart.empty()) {
        if (exppart.size() > 9) return false;  // absurd magnitude, reject rather than allocate
        unsigned long e = std::stoul(exppart);
        if (expneg)
            den *= pow10z(e);
        else
            num *= pow10z(e);
    }
    mpq_class v(num, den);
    v.canonicalize();
    out = neg ? mpq_class(-v) : v;
    return true;
}

bool parse_part_float(const std::string& s, double& out) {
    if (s.empty()) return false;
    if (s.find('/') != std::string::npos) {
        mpq_class v;
        if (!parse_part_exact(s, v)) return false;
        out = v.get_d();
        return true;
    }
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size();
}

/// Split "re", "re+imi", "re-imi", or "imi" into parts; the imaginary part
/// keeps its sign and drops the trailing 'i'. A sign right after e/E belongs
/// to an exponent, not to the split.
bool split_complex(const std::string& tok, std::string& re, std::string& im) {
    if (tok.empty()) return false;
    size_t split = std::string::npos;
    for (size_t k = 1; k < tok.size(); ++k) {
        if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split != std::string::npos) {
        if (tok.back() != 'i') return false;
        re = tok.substr(0, split);
        im = tok.substr(split, tok.size() - split - 1);
        return !im.empty() && im != "+" && im != "-";
    }
    if (tok.back() == 'i') {
        re = "0";
        im = tok.substr(0, tok.size() - 1);
        return !im.empty() && im != "+" && im != "-";
    }
    re = tok;
    im.clear();
    return true;
}

GaussianRational entry_exact(const Token& t, int line) {
    std::string re, im;
    mpq_class rev, imv(0);
    if (!split_complex(t.text, re, im) || !parse_part_exact(re, rev) ||
        (!im.empty() && !parse_part_exact(im, imv)))
        throw ParseError("bad entry '" + t.text + "'", line, t.column);
    return GaussianRational(rev, imv);
}

std::complex<double> entry_float(const Token& t, int line) {
    std::string re, im;
    double rev = 0.0, imv = 0.0;
    if (!split_complex(t.text, re, im) || !parse_part_float(re, rev) ||
        (!im.empty() && !parse_part_float(im, imv)))
        throw ParseError("bad entry '" + t.text + "'", line, t.column);
    return {rev, imv};
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

ParsedMatrix parse_matrix_text(const std::string& text) {
    std::vector<std::string> lines = split_lines(text);
    std::vector<Token> header = tokenize(lines.empty() ? std::string() : lines[0]);
    if (header.size() != 4 || header[0].text != "matrix")
        throw ParseError("expected header 'matrix R C mode'", 1, header.empty() ? 1 : header[0].column);
    long rows = 0, cols = 0;
    try {
        size_t pos = 0;
        rows = std::stol(header[1].text, &pos);
        if (pos != header[1].text.size()) throw std::invalid_argument("");
        cols = std::stol(header[2].text, &pos);
        if (pos != header[2].text.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ParseError("bad matrix dimensions in header", 1, header[1].column);
    }
    if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be positive", 1, header[1].column);
    bool exact;
    if (header[3].text == "exact")
        exact = true;
    else if (header[3].text == "float")
        exact = false;
    else
        throw ParseError("mode must be 'exact' or 'float'", 1, header[3].column);

    ParsedMatrix pm;
    pm.exact = exact;
    if (exact)
        pm.xmat.resize(rows, cols);
    else
        pm.fmat.resize(rows, cols);

    long r = 0;
    size_t li = 1;
    for (; li < lines.size() && r < rows; ++li) {
        std::vector<Token> toks = tokenize(lines[li]);
        if (toks.empty()) continue;
        const int line_no = static_cast<int>(li) + 1;
        if (static_cast<long>(toks.size()) != cols)
            throw ParseError("expected " + std::to_string(cols) + " entries, found " +
                                 std::to_string(toks.size()),
                             line_no, toks[0].column);
        for (long c = 0; c < cols; ++c) {
            const Token& t = toks[static_cast<size_t>(c)];
            if (exact)
                pm.xmat(r, c) = entry_exact(t, line_no);
            else
                pm.fmat(r, c) = entry_float(t, line_no);
        }
        ++r;
    }
    if (r < rows)
        throw ParseError("expected " + std::to_string(rows) + " rows, found " + std::to_string(r),
                         static_cast<int>(lines.size()), 1);
    for (; li < lines.size(); ++li) {
        std::vector<Token> toks = tokenize(lines[li]);
        if (!toks.empty())
            throw ParseError("unexpected content after last row", static_cast<int>(li) + 1,
                             toks[0].column);
    }
    if (exact) pm.fmat = to_float(pm.xmat);
    return pm;
}

ParsedMatrix parse_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path, 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_text(buf.str());
}

std::string serialize_matrix(const MatX& m) {
    std::string out =
        "matrix " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " exact\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += " ";
            out += m(i, j).str();
        }
        out += "\n";
    }
    return out;
}

std::string serialize_matrix(const MatF& m) {
    std::string out =
        "matrix " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " float\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += " ";
            const std::complex<double> v = m(i, j);
            out += fmt_double(v.real());
            if (v.imag() != 0.0) {
                out += (v.imag() < 0.0 ? "-" : "+") + fmt_double(std::abs(v.imag())) + "i";
            }
        }
        out += "\n";
    }
    return out;
}

GaussianRational parse_exact_scalar(const std::string& text) {
    Token t{trim(text), 1};
    return entry_exact(t, 1);
}

std::complex<double> parse_float_scalar(const std::string& text) {
    Token t{trim(text), 1};
    return entry_float(t, 1);
}

namespace {

std::vector<std::vector<int>> parse_partition_impl(const std::string& raw, Eigen::Index D,
                                                   bool allow_file) {
    const std::string spec = trim(raw);
    if (spec == "trivial") {
        std::vector<int> g(static_cast<size_t>(D));
        for (Eigen::Index i = 0; i < D; ++i) g[static_cast<size_t>(i)] = static_cast<int>(i);
        return {g};
    }
    if (spec == "singletons") {
        std::vector<std::vector<int>> groups;
        for (Eigen::Index i = 0; i < D; ++i) groups.push_back({static_cast<int>(i)});
        return groups;
    }
    if (spec.rfind("tensor:", 0) == 0) {
        const std::string tail = spec.substr(7);
        size_t colon = tail.rfind(':');
        if (colon == std::string::npos)
            throw BadGroups("parse_partition: tensor form is tensor:d1xd2x...:s");
        std::vector<int> dims;
        std::string cur;
        for (char c : tail.substr(0, colon) + "x") {
            if (c == 'x') {
                if (!all_digits(cur)) throw BadGroups("parse_partition: bad tensor dimension '" + cur + "'");
                dims.push_back(std::stoi(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        const std::string s_str = tail.substr(colon + 1);
        if (!all_digits(s_str)) throw BadGroups("parse_partition: bad tensor position '" + s_str + "'");
        try {
            return tensor_groups(dims, std::stoi(s_str), D);
        } catch (const BadDims& e) {
            throw BadGroups(e.what());
        }
    }
    if (!spec.empty() && spec[0] == '{') {
        std::vector<std::vector<int>> groups;
        std::vector<bool> seen(static_cast<size_t>(D), false);
        Eigen::Index covered = 0;
        size_t i = 0;
        auto skipws = [&] {
            while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
        };
        while (true) {
            skipws();
            if (i >= spec.size() || spec[i] != '{')
                throw BadGroups("parse_partition: expected '{' in explicit group list");
            ++i;
            std::vector<int> g;
            while (true) {
                skipws();
                size_t start = i;
                while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i]))) ++i;
                if (i == start) throw BadGroups("parse_partition: expected 1-based index");
                int idx = std::stoi(spec.substr(start, i - start));
                if (idx < 1 || idx > D)
                    throw BadGroups("parse_partition: index " + std::to_string(idx) +
                                    " out of range 1.." + std::to_string(D));
                if (seen[static_cast<size_t>(idx - 1)])
                    throw BadGroups("parse_partition: index " + std::to_string(idx) + " repeated");
                seen[static_cast<size_t>(idx - 1)] = true;
                ++covered;
                g.push_back(idx - 1);
                skipws();
                if (i < spec.size() && spec[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < spec.size() && spec[i] == '}') {
                    ++i;
                    break;
                }
                throw BadGroups("parse_partition: expected ',' or '}' in group");
            }
            groups.push_back(std::move(g));
            skipws();
            if (i >= spec.size()) break;
            if (spec[i] != ',') throw BadGroups("parse_partition: expected ',' between groups");
            ++i;
        }
        if (covered != D)
            throw BadGroups("parse_partition: groups cover " + std::to_string(covered) +
                            " of " + std::to_string(D) + " indices");
        return groups;
    }
    if (allow_file && std::filesystem::exists(spec) && std::filesystem::is_regular_file(spec)) {
        std::ifstream in(spec, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_partition_impl(buf.str(), D, false);
    }
    throw BadGroups("parse_partition: unrecognized spec '" + spec + "'");
}

}  // namespace

std::vector<std::vector<int>> parse_partition(const std::string& spec, Eigen::Index D) {
    return parse_partition_impl(spec, D, true);
}

}  // namespace pathsum
