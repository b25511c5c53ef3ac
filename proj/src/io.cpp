#include "qlbit/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlbit/errors.hpp"

namespace qlbit {
namespace io {

using nlohmann::json;

namespace {

constexpr const char* kCoordinateHeader = "%%MatrixMarket matrix coordinate complex general";
constexpr const char* kArrayHeader = "%%MatrixMarket matrix array complex general";

// Above this the exact JSON stores only the generating rule, not the entries.
constexpr std::size_t kExactEntryCap = 512;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::IoError, "cannot open for reading: " + path);
    return f;
}

std::string next_content_line(std::ifstream& f) {
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line[0] != '%') return line;
    }
    throw Error(ErrorCode::IoError, "unexpected end of matrix file");
}

json complex_to_json(Complex v) { return json::array({v.real(), v.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::IoError, "complex must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json gauss_to_json(GaussianInt z) { return json::array({z.c, z.d}); }

GaussianInt gauss_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::IoError, "Gaussian integer must be [c, d]");
    return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

const char* class_tag(CouplingClass c) { return to_string(c); }

CouplingClass class_from_tag(const std::string& s) {
    for (CouplingClass c : {CouplingClass::ComplexSymmetric, CouplingClass::RealSymComplexDetuning,
                            CouplingClass::Hermitian, CouplingClass::AsymmetricCommonK,
                            CouplingClass::Generalized})
        if (s == to_string(c)) return c;
    throw Error(ErrorCode::IoError, "unknown coupling class tag '" + s + "'");
}

} // namespace

void write_matrix_market(const std::string& path, const Matrix& m) {
    std::ofstream f = open_out(path);
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != Complex{}) ++nnz;
    f << kCoordinateHeader << "\n";
    f << m.rows() << " " << m.cols() << " " << nnz << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Complex v = m(i, j);
            if (v == Complex{}) continue;
            f << (i + 1) << " " << (j + 1) << " " << fmt17(v.real()) << " " << fmt17(v.imag())
              << "\n";
        }
    if (!f) throw Error(ErrorCode::IoError, "write failed: " + path);
}

Matrix read_matrix_market(const std::string& path) {
    std::ifstream f = open_in(path);
    std::string header;
    if (!std::getline(f, header)) throw Error(ErrorCode::IoError, "empty matrix file: " + path);
    const bool coordinate = header.rfind(kCoordinateHeader, 0) == 0;
    const bool array = header.rfind(kArrayHeader, 0) == 0;
    if (!coordinate && !array)
        throw Error(ErrorCode::IoError, "unsupported MatrixMarket header in " + path);

    std::istringstream dims(next_content_line(f));
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (coordinate) {
        if (!(dims >> rows >> cols >> nnz)) throw Error(ErrorCode::IoError, "bad size line in " + path);
    } else {
        if (!(dims >> rows >> cols)) throw Error(ErrorCode::IoError, "bad size line in " + path);
    }
    Matrix m(rows, cols);
    if (coordinate) {
        for (std::size_t e = 0; e < nnz; ++e) {
            std::istringstream ls(next_content_line(f));
            std::size_t i = 0, j = 0;
            double re = 0, im = 0;
            if (!(ls >> i >> j >> re >> im)) throw Error(ErrorCode::IoError, "bad entry line in " + path);
            if (i < 1 || i > rows || j < 1 || j > cols)
                throw Error(ErrorCode::IoError, "entry index out of range in " + path);
            m(i - 1, j - 1) = Complex{re, im};
        }
    } else {
        // Array format is column major.
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) {
                std::istringstream ls(next_content_line(f));
                double re = 0, im = 0;
                if (!(ls >> re >> im)) throw Error(ErrorCode::IoError, "bad entry line in " + path);
                m(i, j) = Complex{re, im};
            }
    }
    return m;
}

void write_vector_market(const std::string& path, const Vector& v) {
    std::ofstream f = open_out(path);
    f << kArrayHeader << "\n" << v.size() << " 1\n";
    for (const Complex& x : v) f << fmt17(x.real()) << " " << fmt17(x.imag()) << "\n";
    if (!f) throw Error(ErrorCode::IoError, "write failed: " + path);
}

Vector read_vector_market(const std::string& path) {
    const Matrix m = read_matrix_market(path);
    if (m.cols() != 1) throw Error(ErrorCode::IoError, "expected a single-column vector in " + path);
    Vector v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, 0);
    return v;
}

void write_sidecar(const std::string& path, const Sidecar& sc) {
    json j;
    j["format"] = "qlbit-sidecar";
    j["version"] = 1;
    j["n"] = sc.n;
    j["m"] = sc.m;
    j["class"] = class_tag(sc.cls);
    if (sc.lambda) j["lambda"] = *sc.lambda;
    if (sc.delta) j["delta"] = *sc.delta;
    if (sc.r) j["r"] = complex_to_json(*sc.r);
    if (sc.params) {
        json p;
        p["kA"] = complex_to_json(sc.params->kA);
        p["kB"] = complex_to_json(sc.params->kB);
        p["lA"] = complex_to_json(sc.params->lA);
        p["lB"] = complex_to_json(sc.params->lB);
        p["tauA"] = complex_to_json(sc.params->tauA);
        p["tauB"] = complex_to_json(sc.params->tauB);
        j["params"] = p;
    }
    open_out(path) << j.dump(2) << "\n";
}

Sidecar read_sidecar(const std::string& path) {
    json j;
    try {
        open_in(path) >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("bad sidecar JSON: ") + e.what());
    }
    Sidecar sc;
    try {
        sc.n = j.at("n").get<std::size_t>();
        sc.m = j.at("m").get<std::size_t>();
        sc.cls = class_from_tag(j.at("class").get<std::string>());
        if (j.contains("lambda")) sc.lambda = j["lambda"].get<double>();
        if (j.contains("delta")) sc.delta = j["delta"].get<double>();
        if (j.contains("r")) sc.r = complex_from_json(j["r"]);
        if (j.contains("params")) {
            DesignParams p;
            p.cls = sc.cls;
            p.kA = complex_from_json(j["params"].at("kA"));
            p.kB = complex_from_json(j["params"].at("kB"));
            p.lA = complex_from_json(j["params"].at("lA"));
            p.lB = complex_from_json(j["params"].at("lB"));
            p.tauA = complex_from_json(j["params"].at("tauA"));
            p.tauB = complex_from_json(j["params"].at("tauB"));
            sc.params = p;
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("bad sidecar fields: ") + e.what());
    }
    return sc;
}

void write_exact_design(const std::string& path, const DiscreteDesign& d) {
    json j;
    j["format"] = "qlbit-exact-design";
    j["version"] = 1;
    j["z"] = gauss_to_json(d.z);
    j["w"] = gauss_to_json(d.w);
    j["lambda"] = d.lambda;
    j["tau"] = d.tau;
    j["l"] = gauss_to_json(d.l);
    j["kA"] = d.kA;
    j["kB"] = d.kB;
    j["delta"] = d.delta;
    j["q"] = d.q;
    j["graph"] = "circulant";
    j["coupling"] = "cyclic-matchings";
    if (d.q > 0 && d.q <= kExactEntryCap) {
        const CouplingBlock c = matching_coupling(d.l, d.q);
        json rows = json::array();
        for (std::size_t i = 0; i < d.q; ++i) {
            json row = json::array();
            for (std::size_t jj = 0; jj < d.q; ++jj) row.push_back(gauss_to_json(c.exact_at(i, jj)));
            rows.push_back(std::move(row));
        }
        j["coupling_entries"] = std::move(rows);
    }
    open_out(path) << j.dump() << "\n";
}

DiscreteDesign read_exact_design(const std::string& path) {
    json j;
    try {
        open_in(path) >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("bad design JSON: ") + e.what());
    }
    DiscreteDesign d;
    try {
        d.z = gauss_from_json(j.at("z"));
        d.w = gauss_from_json(j.at("w"));
        d.lambda = j.at("lambda").get<std::int64_t>();
        d.tau = j.at("tau").get<std::int64_t>();
        d.l = gauss_from_json(j.at("l"));
        d.kA = j.at("kA").get<std::int64_t>();
        d.kB = j.at("kB").get<std::int64_t>();
        d.delta = j.at("delta").get<std::int64_t>();
        d.q = j.at("q").get<std::size_t>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("bad design fields: ") + e.what());
    }
    // Stored entries, when present, must agree with the generating rule.
    if (j.contains("coupling_entries")) {
        const CouplingBlock c = matching_coupling(d.l, d.q);
        const json& rows = j["coupling_entries"];
        if (rows.size() != d.q) throw Error(ErrorCode::IoError, "coupling entry row count mismatch");
        for (std::size_t i = 0; i < d.q; ++i)
            for (std::size_t jj = 0; jj < d.q; ++jj)
                if (!(gauss_from_json(rows[i][jj]) == c.exact_at(i, jj)))
                    throw Error(ErrorCode::IoError, "stored coupling entries disagree with the rule");
    }
    return d;
}

namespace {

// Tiny recursive-descent parser for complex expressions.
struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    Complex parse() {
        const Complex v = expr();
        skip_ws();
        if (pos != s.size()) fail("trailing input");
        return v;
    }

    Complex expr() {
        Complex v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    Complex term() {
        Complex v = unary();
        for (;;) {
            if (eat('*')) v *= unary();
            else if (eat('/')) {
                const Complex d = unary();
                if (d == Complex{}) fail("division by zero");
                v /= d;
            } else return v;
        }
    }

    Complex unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return atom();
    }

    Complex atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of expression");
        const char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return word();
        if (eat('(')) {
            const Complex v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        fail("unexpected character");
    }

    Complex number() {
        const char* start = s.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start) fail("bad number");
        pos += static_cast<std::size_t>(end - start);
        // A trailing 'i' glued to the literal makes it imaginary: "2i", "0.5i".
        if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'j') &&
            (pos + 1 == s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
            ++pos;
            return Complex{0.0, v};
        }
        return Complex{v, 0.0};
    }

    Complex word() {
        std::size_t end = pos;
        while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_'))
            ++end;
        const std::string w = s.substr(pos, end - pos);
        pos = end;
        if (w == "i" || w == "j") return Complex{0.0, 1.0};
        if (w == "pi") return Complex{std::acos(-1.0), 0.0};
        if (w == "sqrt2") return Complex{std::sqrt(2.0), 0.0};
        if (w == "e") return Complex{std::exp(1.0), 0.0};
        if (w == "exp" || w == "sqrt" || w == "cos" || w == "sin" || w == "tan") {
            if (!eat('(')) fail("expected '(' after " + w);
            const Complex a = expr();
            if (!eat(')')) fail("expected ')' after " + w + " argument");
            if (w == "exp") return std::exp(a);
            if (w == "sqrt") return std::sqrt(a);
            if (w == "cos") return std::cos(a);
            if (w == "sin") return std::sin(a);
            return std::tan(a);
        }
        fail("unknown symbol '" + w + "'");
    }
};

} // namespace

Complex parse_complex(const std::string& text) { return Parser(text).parse(); }

GaussianInt parse_gaussian_int(const std::string& text) {
    // Accepted forms: "c", "di", "c+di", "c-di", "i", "-i".
    const Complex v = parse_complex(text);
    const double rc = std::round(v.real());
    const double rd = std::round(v.imag());
    if (std::abs(v.real() - rc) > 0.0 || std::abs(v.imag() - rd) > 0.0)
        throw Error(ErrorCode::ParseError, "'" + text + "' is not a Gaussian integer");
    return {static_cast<std::int64_t>(rc), static_cast<std::int64_t>(rd)};
}

std::string format_complex(Complex v) {
    const double re = v.real() == 0.0 ? 0.0 : v.real(); // drop negative zero
    const double im = v.imag() == 0.0 ? 0.0 : v.imag();
    std::ostringstream os;
    os << fmt17(re);
    if (im >= 0.0 || std::isnan(im)) os << "+" << fmt17(im) << "i";
    else os << "-" << fmt17(-im) << "i";
    return os.str();
}

} // namespace io
} // namespace qlbit
