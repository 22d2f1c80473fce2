#include "opmodel/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace opm {

namespace {

[[noreturn]] void schema(const std::string& msg) { fail("SchemaError", msg); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
    return j.at(key);
}

int as_int(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) schema(what + " must be an integer");
    return j.get<int>();
}

}  // namespace

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    schema("complex numbers are [re, im] pairs");
}

Json matrix_to_json(const CMatrix& A) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < A.cols(); ++c) row.push_back(complex_to_json(A(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) schema("matrices are non-empty arrays of rows");
    std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) schema("matrix rows must be non-empty arrays");
    CMatrix A(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols) schema("matrix rows have different lengths");
        for (std::size_t c = 0; c < cols; ++c) A(r, c) = complex_from_json(j[r][c]);
    }
    return A;
}

Json series_to_json(const NcSeries& s) {
    Json terms = Json::array();
    for (const auto& [w, c] : s.coeffs) {
        if (c == cplx(0.0)) continue;
        terms.push_back({{"word", w}, {"coeff", complex_to_json(c)}});
    }
    return {{"terms", terms}};
}

NcSeries series_from_json(const Json& j, int n, int d) {
    NcSeries s(n, d);
    for (const auto& t : field(j, "terms")) {
        const Json& wj = field(t, "word");
        if (!wj.is_array()) schema("words are integer arrays");
        Word w;
        for (const auto& l : wj) w.push_back(as_int(l, "letter"));
        try {
            check_word(w, n);
        } catch (const Error& e) {
            schema(e.what());
        }
        if (static_cast<int>(w.size()) > d) schema("term " + word_string(w) + " exceeds the degree");
        s.add_to(w, complex_from_json(field(t, "coeff")));
    }
    return s;
}

Json series_tuple_to_json(const NcSeriesTuple& f) {
    Json comps = Json::array();
    for (const auto& s : f.components) comps.push_back(series_to_json(s));
    return {{"components", comps}};
}

NcSeriesTuple series_tuple_from_json(const Json& j, int n, int d) {
    if (j.is_string()) {
        if (j.get<std::string>() == "identity") return NcSeriesTuple::identity(n, d);
        schema("unknown series shorthand '" + j.get<std::string>() + "'");
    }
    const Json& comps = field(j, "components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != n) schema("a series tuple needs n components");
    std::vector<NcSeries> out;
    for (const auto& c : comps) out.push_back(series_from_json(c, n, d));
    return NcSeriesTuple(out);
}

Json tuple_to_json(const OperatorTuple& X) {
    Json mats = Json::array();
    for (const auto& T : X.T) mats.push_back(matrix_to_json(T));
    return {{"matrices", mats}};
}

OperatorTuple tuple_from_json(const Json& j) {
    const Json& mats = field(j, "matrices");
    if (!mats.is_array() || mats.empty()) schema("a tuple needs at least one matrix");
    std::vector<CMatrix> T;
    for (const auto& m : mats) {
        T.push_back(matrix_from_json(m));
        if (T.back().rows() != T.back().cols() || T.back().rows() != T.front().rows())
            schema("tuple entries must be square of one size");
    }
    return OperatorTuple(T);
}

Json ideal_to_json(const IdealSpec& ideal) {
    if (ideal.kind == IdealKind::Commutator) return {{"kind", "commutator"}};
    if (ideal.kind == IdealKind::ExplicitGenerators && ideal.polys.empty()) return {{"kind", "trivial"}};
    Json gens = Json::array();
    for (const auto& p : ideal.polys) gens.push_back(series_to_json(p));
    return {{"kind", ideal.kind == IdealKind::HomogeneousComposed ? "homogeneous" : "explicit"}, {"generators", gens}};
}

IdealSpec ideal_from_json(const Json& j, int n, int d) {
    if (j.is_null()) return IdealSpec::trivial();
    const Json& kj = field(j, "kind");
    if (!kj.is_string()) schema("ideal kind must be a string");
    std::string kind = kj.get<std::string>();
    if (kind == "trivial") return IdealSpec::trivial();
    if (kind == "commutator") return IdealSpec::commutator();
    IdealSpec spec;
    if (kind == "homogeneous")
        spec.kind = IdealKind::HomogeneousComposed;
    else if (kind == "explicit")
        spec.kind = IdealKind::ExplicitGenerators;
    else
        schema("unknown ideal kind '" + kind + "'");
    for (const auto& g : field(j, "generators")) spec.polys.push_back(series_from_json(g, n, d));
    return spec;
}

Json tolerances_to_json(const Tolerances& t) {
    return {{"rank_rel", t.rank_rel}, {"check_abs", t.check_abs}, {"opt_tol", t.opt_tol}};
}

Tolerances tolerances_from_json(const Json& j, Tolerances base) {
    if (j.is_null()) return base;
    if (!j.is_object()) schema("tolerances must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number()) schema("tolerance '" + it.key() + "' must be a number");
        double v = it.value().get<double>();
        if (it.key() == "rank_rel")
            base.rank_rel = v;
        else if (it.key() == "check_abs")
            base.check_abs = v;
        else if (it.key() == "opt_tol")
            base.opt_tol = v;
        else
            schema("unknown tolerance '" + it.key() + "'");
    }
    try {
        base.validate();
    } catch (const Error& e) {
        schema(e.what());
    }
    return base;
}

namespace {

std::string format_double(double x) {
    if (std::isnan(x)) return "\"nan\"";
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    // keep floats recognizable as floats after a round trip
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void dump_into(const Json& j, int indent, std::string& out) {
    std::string pad(indent, ' '), inner(indent + 2, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted keys
            if (!first) out += ",\n";
            first = false;
            out += inner + Json(it.key()).dump() + ": ";
            dump_into(it.value(), indent + 2, out);
        }
        out += "\n" + pad + "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            out += "[]";
            return;
        }
        bool flat = true;
        for (const auto& e : j) flat = flat && (is_scalar(e) || (e.is_array() && std::all_of(e.begin(), e.end(), is_scalar)));
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                dump_into(j[i], indent, out);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += inner;
            dump_into(j[i], indent + 2, out);
        }
        out += "\n" + pad + "]";
    } else if (j.is_number_float()) {
        out += format_double(j.get<double>());
    } else {
        out += j.dump();
    }
}

}  // namespace

std::string canonical_dump(const Json& j) {
    std::string out;
    dump_into(j, 0, out);
    out += "\n";
    return out;
}

std::string stable_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace opm
