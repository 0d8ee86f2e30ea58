#ifndef PROLATE_IO_HPP
#define PROLATE_IO_HPP

// Deterministic serialization: fixed field order, floats printed with at
// most 15 significant digits so identical runs produce identical bytes.
// Also the unitary-matrix argument parser shared by the CLI and tests, and
// a small complex cubic spline for sampled-function input files.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "prolate/boundary_algebra.hpp"
#include "prolate/errors.hpp"
#include "prolate/linalg.hpp"

namespace prolate {

inline std::string fmt_double(double v) {
    if (v == 0.0) return "0";  // normalizes -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline std::string fmt_complex_pair(cplx z) {
    return "[" + fmt_double(z.real()) + ", " + fmt_double(z.imag()) + "]";
}

// Minimal ordered JSON writer: the caller controls field order directly.
class JsonWriter {
  public:
    JsonWriter& begin_object() {
        sep();
        out_ += '{';
        need_comma_ = false;
        return *this;
    }
    JsonWriter& end_object() {
        out_ += '}';
        need_comma_ = true;
        return *this;
    }
    JsonWriter& begin_array() {
        sep();
        out_ += '[';
        need_comma_ = false;
        return *this;
    }
    JsonWriter& end_array() {
        out_ += ']';
        need_comma_ = true;
        return *this;
    }

    JsonWriter& key(const std::string& k) {
        sep();
        out_ += '"' + k + "\": ";
        need_comma_ = false;
        return *this;
    }
    JsonWriter& value(double v) { return emit(fmt_double(v)); }
    JsonWriter& value(int v) { return emit(std::to_string(v)); }
    JsonWriter& value(std::size_t v) { return emit(std::to_string(v)); }
    JsonWriter& value(bool v) { return emit(v ? "true" : "false"); }
    JsonWriter& value(cplx z) { return emit(fmt_complex_pair(z)); }
    JsonWriter& value(const std::string& s) {
        std::string esc = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') esc += '\\';
            esc += c;
        }
        esc += '"';
        return emit(esc);
    }
    JsonWriter& value(const char* s) { return value(std::string(s)); }
    JsonWriter& raw(const std::string& s) { return emit(s); }

    const std::string& str() const { return out_; }

  private:
    JsonWriter& emit(const std::string& s) {
        sep();
        out_ += s;
        need_comma_ = true;
        return *this;
    }
    void sep() {
        if (need_comma_) out_ += ", ";
        need_comma_ = false;
    }
    std::string out_;
    bool need_comma_ = false;
};

// ---------------------------------------------------------------- unitaries

// Accepts "identity", "neg-identity", "swap", or 8 comma-separated reals
// (row-major re,im interleaved).
inline UnitaryMatrix2 parse_unitary(const std::string& spec) {
    if (spec == "identity") return UnitaryMatrix2::identity();
    if (spec == "neg-identity") return UnitaryMatrix2::neg_identity();
    if (spec == "swap") return UnitaryMatrix2::swap();
    std::vector<double> vals;
    std::string tok;
    std::istringstream in(spec);
    while (std::getline(in, tok, ',')) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw ValidationError("parse_unitary: expected a number, got '" + tok + "'");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size())
            throw ValidationError("parse_unitary: trailing characters in '" + tok + "'");
        vals.push_back(v);
    }
    if (vals.size() != 8)
        throw ValidationError("parse_unitary: need a preset name or 8 numbers (re,im per entry)");
    return make_unitary(cplx(vals[0], vals[1]), cplx(vals[2], vals[3]), cplx(vals[4], vals[5]),
                        cplx(vals[6], vals[7]));
}

inline std::string unitary_json(const UnitaryMatrix2& u) {
    std::string s = "[";
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i || j) s += ", ";
            s += fmt_complex_pair(u(i, j));
        }
    return s + "]";
}

// CSV with columns t,re[,im]; '#' comment lines allowed.
inline void read_samples_csv(const std::string& path, std::vector<double>& t,
                             std::vector<cplx>& y) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) {
            try {
                vals.push_back(std::stod(cell));
            } catch (const std::exception&) {
                vals.clear();
                break;  // header line
            }
        }
        if (vals.size() < 2) continue;
        t.push_back(vals[0]);
        y.push_back(cplx(vals[1], vals.size() > 2 ? vals[2] : 0.0));
    }
    if (t.size() < 4) throw ValidationError("input file has fewer than 4 usable samples");
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << content;
}

}  // namespace prolate

#endif  // PROLATE_IO_HPP
