#include "opmodel/scenario.hpp"

#include "opmodel/acceptance.hpp"
#include "opmodel/beurling.hpp"
#include "opmodel/dilation.hpp"
#include "opmodel/modeltheory.hpp"
#include "opmodel/rkhs.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>

namespace opm {

namespace {

[[noreturn]] void schema(const std::string& msg) { fail("SchemaError", msg); }

// largest Fock space a config may ask for; keeps dense matrices in memory
constexpr long long kMaxFockDim = 4000;

const std::set<std::string> kTupleKinds = {"nilpotent", "contraction", "commuting"};

int param_int(const Json& p, const char* key, int fallback, int lo) {
    if (!p.contains(key)) return fallback;
    const Json& v = p.at(key);
    if (!v.is_number_integer() || v.get<long long>() < lo)
        schema(std::string("'") + key + "' must be an integer >= " + std::to_string(lo));
    return v.get<int>();
}

double param_double(const Json& p, const char* key, double fallback) {
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_number()) schema(std::string("'") + key + "' must be a number");
    return p.at(key).get<double>();
}

bool param_bool(const Json& p, const char* key, bool fallback) {
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_boolean()) schema(std::string("'") + key + "' must be true or false");
    return p.at(key).get<bool>();
}

std::string param_string(const Json& p, const char* key, const std::string& fallback) {
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_string()) schema(std::string("'") + key + "' must be a string");
    return p.at(key).get<std::string>();
}

OperatorTuple draw_tuple(const std::string& kind, int n, int dim, double row_norm, Rng& rng) {
    if (kind == "nilpotent") return random_nilpotent_tuple(n, dim, row_norm, rng);
    if (kind == "contraction") return random_contraction_tuple(n, dim, row_norm, rng);
    if (kind == "commuting") return random_commuting_nilpotent_tuple(n, dim, row_norm, rng);
    schema("unknown tuple kind '" + kind + "'");
}

void validate_generate(const Json& gen) {
    if (!gen.is_object()) schema("'generate' must be an object");
    for (auto it = gen.begin(); it != gen.end(); ++it)
        if (!std::set<std::string>{"kind", "dim", "row_norm", "pull_back"}.count(it.key()))
            schema("unknown generate field '" + it.key() + "'");
    std::string kind = param_string(gen, "kind", "");
    if (!kTupleKinds.count(kind)) schema("generate.kind must be nilpotent, contraction or commuting");
    param_int(gen, "dim", 3, 1);
    double r = param_double(gen, "row_norm", 0.8);
    if (!(r > 0.0) || (kind == "contraction" && r >= 1.0)) schema("generate.row_norm out of range");
    param_bool(gen, "pull_back", false);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot read '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        schema("'" + path + "' is not valid JSON: " + e.what());
    }
}

bool needs_tuple(const std::string& p) {
    return p == "charfun" || p == "fundamental_identity" || p == "reconstruct" || p == "dilate";
}

bool needs_seed(const ScenarioConfig& c) {
    if (c.pipeline == "clt" || c.pipeline == "suite") return true;
    if (c.tuple.is_object() && c.tuple.contains("generate")) return true;
    if (c.pipeline == "beurling" && !c.params.contains("seed_vectors")) return true;
    if (c.pipeline == "kernel" && !c.params.contains("points")) return true;
    if (c.pipeline == "dilate" && c.params.value("cc_level", 0) > 0) return true;
    return false;
}

// ---- shared setup ----

NcSeriesTuple symbol_of(const ScenarioConfig& c) { return series_tuple_from_json(c.f, c.n, c.degree); }

IdealSpec ideal_of(const ScenarioConfig& c) { return ideal_from_json(c.ideal, c.n, c.degree); }

bool constrained(const ScenarioConfig& c) { return !c.ideal.is_null(); }

OperatorTuple resolve_tuple(const ScenarioConfig& c, const ModelContext& ctx, Rng& rng) {
    if (!c.tuple.is_object()) schema("pipeline '" + c.pipeline + "' needs a tuple");
    OperatorTuple X;
    if (c.tuple.contains("matrices")) {
        X = tuple_from_json(c.tuple);
    } else if (c.tuple.contains("file")) {
        std::filesystem::path p = c.tuple.at("file").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(c.base_dir) / p;
        Json j = read_json_file(p.string());
        X = tuple_from_json(j.contains("tuple") ? j.at("tuple") : j);
    } else {
        const Json& gen = c.tuple.at("generate");
        X = draw_tuple(gen.at("kind").get<std::string>(), c.n, param_int(gen, "dim", 3, 1),
                       param_double(gen, "row_norm", 0.8), rng);
        if (param_bool(gen, "pull_back", false)) X = pull_back(ctx, X);
    }
    if (X.n() != c.n) schema("tuple has " + std::to_string(X.n()) + " matrices but n = " + std::to_string(c.n));
    return X;
}

std::string ij_name(const std::string& stem, int i, int j) {
    return stem + "." + std::to_string(i + 1) + "." + std::to_string(j + 1);
}

// projector onto word length m, in N frame coordinates
CMatrix degree_part(const VarietyContext& v, int m) {
    const auto& fc = v.model.fock;
    CMatrix P = CMatrix::Zero(fc.dim, fc.dim);
    for (int i = 0; i < fc.dim; ++i)
        if (static_cast<int>(fc.word(i).size()) == m) P(i, i) = 1.0;
    return v.N_frame.frame.adjoint() * P * v.N_frame.frame;
}

double max_abs_coeff(const NcSeriesTuple& f) {
    double m = 0.0;
    for (const auto& s : f.components)
        for (const auto& [w, c] : s.coeffs) m = std::max(m, std::abs(c));
    return m;
}

// ---- pipelines ----

using Runner = std::function<void(const ScenarioConfig&, Report&, Rng&)>;

void run_invert(const ScenarioConfig& c, Report& rep, Rng&) {
    NcSeriesTuple f = symbol_of(c);
    NcSeriesTuple g = invert_composition(f, c.tol);
    NcSeriesTuple id = NcSeriesTuple::identity(c.n, c.degree);
    double scale = std::max({1.0, max_abs_coeff(f), max_abs_coeff(g)});
    const std::string note = "coefficientwise through the truncation degree, 1e-12 times the largest coefficient";
    rep.add(at_most("invert.f_after_g", compose(f, g).max_coeff_diff(id), 1e-12 * scale, 0, note));
    rep.add(at_most("invert.g_after_f", compose(g, f).max_coeff_diff(id), 1e-12 * scale, 0, note));
    int degF = f.max_degree();
    // a property of f, not a pass/fail criterion: z + z^2 has no polynomial inverse
    if (degF >= 1 && c.degree >= 2 * degF) rep.artifacts["property_A"] = property_A_check(f, c.tol);
    if (!c.g.is_null()) {
        NcSeriesTuple claimed = series_tuple_from_json(c.g, c.n, c.degree);
        rep.add(at_most("invert.claimed_inverse_gap", g.max_coeff_diff(claimed), c.tol.check_abs));
    }
    rep.artifacts["g"] = series_tuple_to_json(g);
    rep.artifacts["jacobian_det"] = complex_to_json(jacobian_at_zero(f).det);
    rep.artifacts["radius_proxy"] = radius_diagnostics(g).overall_proxy;
}

void run_model(const ScenarioConfig& c, Report& rep, Rng&) {
    ModelContext ctx = build_model(symbol_of(c), c.tol);
    rep.add(at_most("model.inverse_residual", model_inverse_residual(ctx), c.tol.check_abs,
                    std::min(ctx.degree(), ctx.f_degree * ctx.g_degree)));
    auto R = model_gram_residuals(ctx);
    for (int i = 0; i < ctx.n(); ++i)
        for (int j = 0; j < ctx.n(); ++j)
            rep.add(at_most(ij_name("model.gram_residual", i, j), R(i, j), c.tol.check_abs, ctx.g_degree));
    CMatrix H(ctx.n(), ctx.n());
    for (int i = 0; i < ctx.n(); ++i)
        for (int j = 0; j < ctx.n(); ++j) H(i, j) = hardy_inner(ctx, i, j);
    rep.artifacts["hardy_gram"] = matrix_to_json(H);
    rep.artifacts["fock_dim"] = ctx.dim();
    rep.artifacts["f_degree"] = ctx.f_degree;
    rep.artifacts["g_degree"] = ctx.g_degree;
}

struct CharfunStage {
    ModelContext ctx;
    std::optional<VarietyContext> v;
    OperatorTuple X;
    bool member = false;
};

CharfunStage charfun_stage(const ScenarioConfig& c, Report& rep, Rng& rng, const std::string& prefix) {
    CharfunStage s{build_model(symbol_of(c), c.tol), std::nullopt, {}, false};
    if (constrained(c)) s.v = build_variety(s.ctx, ideal_of(c), c.tol);
    s.X = resolve_tuple(c, s.ctx, rng);
    auto mem = membership_check(s.ctx, s.X, c.tol);
    s.member = mem.member();
    rep.add(holds(prefix + ".membership", s.member, to_string(mem.verdict)));
    if (s.v && s.member) {
        auto van = vanishing_check(*s.v, s.X, c.tol);
        rep.add(at_most(prefix + ".vanishing", van.max_norm(), c.tol.check_abs));
        s.member = van.pass;
    }
    return s;
}

CharFunData charfun_of(const CharfunStage& s, const DefectData& D, const Tolerances& tol) {
    return s.v ? constrained_characteristic_function(*s.v, s.X, D, tol) : characteristic_function(s.ctx, s.X, D, tol);
}

void run_charfun(const ScenarioConfig& c, Report& rep, Rng& rng) {
    auto s = charfun_stage(c, rep, rng, "charfun");
    if (!s.member) return;
    auto pure = pure_check(s.ctx, s.X, c.tol);
    auto D = defects(s.ctx, s.X, c.tol);
    auto cf = charfun_of(s, D, c.tol);
    auto ma = multi_analytic_check(cf);
    rep.add(at_most("charfun.multi_analytic", ma.residual, c.tol.check_abs, ma.margin));
    auto iso = isometry_iff_pure_check(cf, pure, c.tol);
    rep.add(holds("charfun.isometry_iff_pure", iso.consistent,
                  cf.constrained ? "partial isometry on the constrained space" : "isometry on the free space"));
    auto pc = purely_contractive_check(cf, c.tol);
    Json& a = rep.artifacts;
    a["pure"] = pure.verdict;
    a["pure_label"] = pure.label;
    a["e"] = cf.e;
    a["e_star"] = cf.e_star;
    a["outer_dim"] = cf.outer_dim;
    a["degenerate"] = cf.degenerate;
    a["isometry_defect"] = iso.isometry_defect;
    a["partial_isometry_defect"] = iso.partial_isometry_defect;
    a["purely_contractive"] = pc.purely_contractive;
    a["vacuum_norm"] = pc.vacuum_norm;
    if (param_bool(c.params, "dump_theta", false)) a["theta"] = matrix_to_json(cf.theta);
}

void run_identity(const ScenarioConfig& c, Report& rep, Rng& rng) {
    auto s = charfun_stage(c, rep, rng, "fundamental_identity");
    if (!s.member) return;
    auto D = defects(s.ctx, s.X, c.tol);
    auto cf = charfun_of(s, D, c.tol);
    auto K = poisson_kernel(s.ctx, s.X, D, c.tol, s.v ? &s.v->N_frame : nullptr);
    auto id = fundamental_identity_check(K, cf, c.tol);
    rep.add(at_most("fundamental_identity.residual", id.residual, c.tol.check_abs + id.tail, id.margin,
                    "I - Theta Theta* - K K* on the outer space; tolerance includes the power tail"));
    rep.artifacts["tail"] = id.tail;
    rep.artifacts["defect_dim"] = K.defect_dim;
    rep.artifacts["kernel_isometry_defect"] = K.isometry_defect;
}

void run_reconstruct(const ScenarioConfig& c, Report& rep, Rng& rng) {
    auto s = charfun_stage(c, rep, rng, "reconstruct");
    if (!s.member) return;
    auto rr = reconstruct_and_compare(s.ctx, s.X, c.tol, s.v ? &*s.v : nullptr);
    rep.add(holds("reconstruct.pass", rr.pass, rr.specht.mismatch_word));
    rep.add(at_most("reconstruct.trace_mismatch", rr.specht.max_mismatch, 1e-7, 0, "Specht traces"));
    Json& a = rep.artifacts;
    a["pure"] = rr.pure;
    a["approximate"] = rr.approximate;
    a["dim_X"] = rr.dim_X;
    a["dim_H"] = rr.dim_H;
    a["reduced"] = rr.reduced;
    a["word_length"] = rr.specht.word_length;
    a["words_checked"] = rr.specht.words_checked;
}

void run_dilate(const ScenarioConfig& c, Report& rep, Rng& rng) {
    ModelContext ctx = build_model(symbol_of(c), c.tol);
    OperatorTuple X = resolve_tuple(c, ctx, rng);
    std::optional<VarietyContext> v;
    DilationData d;
    if (constrained(c)) {
        v = build_variety(ctx, ideal_of(c), c.tol);
        auto cd = constrained_dilation_pure(*v, X, c.tol);
        d = cd.dilation;
        rep.add(holds("dilate.vanishing", cd.vanishing));
        rep.add(holds("dilate.V_pure", cd.V_pure));
        rep.add(holds("dilate.defect_consistent", cd.defect_consistent));
    } else {
        d = minimal_dilation_pure(ctx, X, c.tol);
        rep.add(at_most("dilate.row_isometry_defect", d.row_isometry_defect, c.tol.check_abs, 1));
    }
    rep.add(at_most("dilate.embed_defect", d.embed_defect, c.tol.check_abs));
    rep.add(at_most("dilate.intertwining", d.intertwining, c.tol.check_abs, 1));
    rep.add(at_most("dilate.coinvariance", d.coinvariance, c.tol.check_abs, 1));
    rep.add(holds("dilate.minimal", d.minimal));
    int level = param_int(c.params, "cc_level", 0, 0);
    if (level > 0) {
        if (!v) v = build_variety(ctx, IdealSpec::trivial(), c.tol);
        int samples = param_int(c.params, "cc_samples", 100, 1);
        for (int l = 1; l <= level; ++l) {
            auto cc = completely_contractive_check(*v, X, l, samples, rng, c.tol);
            rep.add(at_least("dilate.complete_contractivity.level" + std::to_string(l), cc.worst_slack,
                             -c.tol.check_abs, 0, std::to_string(cc.samples) + " random kernel polynomials"));
        }
    }
    Json& a = rep.artifacts;
    a["ambient_dim"] = d.ambient_dim;
    a["defect_dim"] = d.defect_dim;
    a["minimality_rank"] = d.minimality_rank;
    a["interior_dim"] = d.interior_dim;
    a["tail"] = d.tail;
}

void run_variety(const ScenarioConfig& c, Report& rep, Rng&) {
    ModelContext ctx = build_model(symbol_of(c), c.tol);
    auto v = build_variety(ctx, ideal_of(c), c.tol);
    rep.add(at_most("variety.universal_constraints", universal_constraint_check(v, c.tol).max_norm(),
                    c.tol.check_abs, v.generator_degree));
    rep.add(at_most("variety.coinvariance", coinvariance_defect(v), c.tol.check_abs));
    int k = param_int(c.params, "k", 1, 1);
    auto zc = zero_characteristic_check(v, k, c.tol);
    rep.add(holds("variety.zero_characteristic", zc.pass));
    Json& a = rep.artifacts;
    a["dim_N"] = v.dim();
    a["dim_M"] = v.M_frame.dim();
    a["contains_vacuum"] = v.contains_vacuum;
    a["dropped_mass"] = v.dropped_mass;
    a["generator_degree"] = v.generator_degree;
}

void run_beurling(const ScenarioConfig& c, Report& rep, Rng& rng) {
    ModelContext ctx = build_model(symbol_of(c), c.tol);
    auto v = build_variety(ctx, ideal_of(c), c.tol);
    int k = param_int(c.params, "k", 1, 1);
    CMatrix seed;
    if (c.params.contains("seed_vectors")) {
        CMatrix S = matrix_from_json(c.params.at("seed_vectors"));
        if (S.rows() != ctx.dim() * k) schema("seed_vectors need fock_dim * k rows");
        seed = kron(v.N_frame.frame.adjoint(), CMatrix::Identity(k, k)) * S;
    } else {
        std::vector<int> degrees{1, 2};
        if (c.params.contains("seed_degrees")) {
            degrees.clear();
            for (const auto& m : c.params.at("seed_degrees")) {
                if (!m.is_number_integer() || m.get<int>() < 0 || m.get<int>() > c.degree)
                    schema("seed_degrees are word lengths within the degree");
                degrees.push_back(m.get<int>());
            }
        }
        seed.resize(v.dim() * k, static_cast<Eigen::Index>(degrees.size()));
        for (std::size_t i = 0; i < degrees.size(); ++i)
            seed.col(i) = kron(degree_part(v, degrees[i]), CMatrix::Identity(k, k)) * random_complex(v.dim() * k, 1, rng);
    }
    Subspace M = invariant_closure(v, k, seed, c.tol);
    rep.add(holds("beurling.nonzero_subspace", M.dim() > 0));
    if (M.dim() == 0) return;
    auto bf = beurling_factor(v, M, c.tol);
    rep.add(at_most("beurling.residual", bf.residual, c.tol.check_abs));
    rep.add(at_most("beurling.partial_isometry_defect", bf.partial_isometry_defect, c.tol.check_abs));
    rep.add(at_most("beurling.intertwining", bf.intertwining, c.tol.check_abs, 1));
    rep.add(at_most("beurling.round_trip", bf.round_trip, c.tol.check_abs));
    Json& a = rep.artifacts;
    a["dim_M"] = M.dim();
    a["wandering_dim"] = bf.G_dim;
    a["k"] = k;
    a["graded"] = bf.graded;
    a["lift_invariance"] = bf.lift_invariance;
    a["wandering_orthogonality"] = bf.wandering_orthogonality;
}

void run_clt(const ScenarioConfig& c, Report& rep, Rng& rng) {
    ModelContext ctx = build_model(symbol_of(c), c.tol);
    auto v = build_variety(ctx, ideal_of(c), c.tol);
    int k = param_int(c.params, "k", 1, 1);
    std::string kind = param_string(c.params, "problem", "generated");
    LiftingProblem pr;
    std::optional<double> closed_form;
    if (kind == "generated") {
        pr = random_feasible_lifting(v, k, rng).problem;
    } else if (kind == "parrott") {
        auto inst = parrott_instance(v, k, rng);
        pr = inst.problem;
        closed_form = inst.closed_form;
    } else {
        schema("clt problem must be 'generated' or 'parrott'");
    }
    pr.opt_tol = c.tol.opt_tol;
    auto r = commutant_lift(pr);
    rep.add(at_most("clt.intertwining", r.intertwining, c.tol.opt_tol));
    rep.add(at_most("clt.compression", r.compression, c.tol.opt_tol));
    rep.add(at_most("clt.range_defect", r.range_defect, c.tol.opt_tol));
    if (closed_form)
        rep.add(at_most("clt.parrott_gap", std::abs(r.norm - *closed_form), 1e-8, 0, "closed-form completion norm"));
    else
        rep.add(at_most("clt.norm_inflation", r.eps_lift, param_double(c.params, "max_inflation", 1e-4)));
    Json& a = rep.artifacts;
    a["norm"] = r.norm;
    a["x_norm"] = r.x_norm;
    a["bisection_norm"] = r.bisection_norm;
    a["iterations"] = r.iterations;
    a["newton_steps"] = r.newton_steps;
    if (closed_form) a["closed_form"] = *closed_form;
}

void run_kernel(const ScenarioConfig& c, Report& rep, Rng& rng) {
    ModelContext ctx = build_model(symbol_of(c), c.tol);
    PointSet P;
    if (c.params.contains("points")) {
        for (const auto& pj : c.params.at("points")) {
            if (!pj.is_array() || static_cast<int>(pj.size()) != c.n) schema("each point needs n coordinates");
            Point z;
            for (const auto& x : pj) z.push_back(complex_from_json(x));
            check_point(ctx, z, c.tol);
            P.points.push_back(z);
        }
    } else {
        P = sample_points(ctx, param_int(c.params, "count", 20, 1), rng, param_double(c.params, "radius", 0.9), c.tol);
    }
    auto gram = gram_psd_check(ctx, P);
    rep.add(at_least("kernel.gram_min_eigenvalue", gram.min_eigenvalue, -1e-10));
    rep.add(at_most("kernel.gram_hermitian_defect", gram.hermitian_defect, 1e-12));
    std::optional<OperatorTuple> X;
    if (c.tuple.is_object()) {
        X = resolve_tuple(c, ctx, rng);
        auto pick = pick_contractivity_check(ctx, *X, P, param_double(c.params, "theta_scale", 1.0), c.tol);
        rep.add(at_least("kernel.pick_min_eigenvalue", pick.min_eigenvalue, pick.threshold, 0,
                         "threshold -1e-9 times the trace"));
    }
    if (constrained(c) && ideal_of(c).kind == IdealKind::Commutator) {
        auto v = build_variety(ctx, IdealSpec::commutator(), c.tol);
        auto sym = symmetric_model_consistency(v, P, c.tol.check_abs);
        rep.add(holds("kernel.symmetric_model", sym.pass));
        rep.artifacts["symmetric_eigen_residual"] = sym.eigen_residual;
        rep.artifacts["symmetric_norm_gap"] = sym.norm_gap;
        if (X) {
            auto pe = point_evaluation_consistency(v, *X, P, c.tol);
            rep.add(at_most("kernel.point_evaluation_gap", pe.max_gap, c.tol.check_abs + pe.max_tail_bound, 0,
                            "tolerance includes the kernel tail bound"));
        }
    }
    Json diag = Json::array();
    for (const auto& z : P.points) diag.push_back(kernel_eval(ctx, z, z, c.tol).real());
    rep.artifacts["diagonal"] = diag;
    rep.artifacts["points"] = P.size();
}

void run_suite(const ScenarioConfig& c, Report& rep, Rng&) { acceptance_checks(*c.seed, rep); }

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> table = {
        {"invert", run_invert},
        {"model", run_model},
        {"charfun", run_charfun},
        {"fundamental_identity", run_identity},
        {"reconstruct", run_reconstruct},
        {"dilate", run_dilate},
        {"variety", run_variety},
        {"beurling", run_beurling},
        {"clt", run_clt},
        {"kernel", run_kernel},
        {"suite", run_suite},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& pipeline_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, r] : runners()) out.push_back(name);
        return out;
    }();
    return names;
}

Json ScenarioConfig::to_json() const {
    Json j = {{"pipeline", pipeline}, {"tolerances", tolerances_to_json(tol)}, {"params", params}};
    if (pipeline != "suite") {
        j["n"] = n;
        j["degree"] = degree;
        j["f"] = f;
    }
    if (!g.is_null()) j["g"] = g;
    if (!tuple.is_null()) j["tuple"] = tuple;
    if (!ideal.is_null()) j["ideal"] = ideal;
    if (seed) j["seed"] = *seed;
    return j;
}

ScenarioConfig config_from_json(const Json& j, const std::string& base_dir) {
    if (!j.is_object()) schema("a config is a JSON object");
    static const std::set<std::string> known = {"pipeline", "n",     "degree", "tolerances", "f",
                                                "g",        "tuple", "ideal",  "params",     "seed"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) schema("unknown config field '" + it.key() + "'");
    ScenarioConfig c;
    c.base_dir = base_dir;
    c.pipeline = param_string(j, "pipeline", "");
    if (!runners().count(c.pipeline)) schema("unknown pipeline '" + c.pipeline + "'");
    bool suite = c.pipeline == "suite";
    if (!suite) {
        if (!j.contains("n") || !j.contains("degree")) schema("'n' and 'degree' are required");
        c.n = param_int(j, "n", 0, 1);
        c.degree = param_int(j, "degree", 0, 1);
        if (fock_dim(c.n, c.degree) > kMaxFockDim) schema("Fock dimension above " + std::to_string(kMaxFockDim));
    }
    c.tol = tolerances_from_json(j.value("tolerances", Json()));
    if (j.contains("params")) {
        c.params = j.at("params");
        if (!c.params.is_object()) schema("'params' must be an object");
    }
    if (j.contains("seed")) {
        const Json& s = j.at("seed");
        if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
            schema("'seed' must be a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }
    if (suite) {
        if (!c.seed) c.seed = 1;
        return c;
    }
    if (j.contains("f")) c.f = j.at("f");
    symbol_of(c);
    if (j.contains("g")) {
        c.g = j.at("g");
        series_tuple_from_json(c.g, c.n, c.degree);
    }
    if (j.contains("ideal")) {
        c.ideal = j.at("ideal");
        ideal_of(c);
    }
    if (j.contains("tuple")) {
        c.tuple = j.at("tuple");
        const Json& t = c.tuple;
        int forms = t.is_object() ? static_cast<int>(t.contains("matrices") + t.contains("file") + t.contains("generate")) : 0;
        if (forms != 1 || t.size() != 1) schema("'tuple' holds exactly one of matrices, file, generate");
        if (t.contains("matrices")) {
            if (tuple_from_json(t).n() != c.n) schema("tuple size differs from n");
        } else if (t.contains("file")) {
            if (!t.at("file").is_string()) schema("tuple.file must be a path");
        } else {
            validate_generate(t.at("generate"));
        }
    } else if (needs_tuple(c.pipeline)) {
        schema("pipeline '" + c.pipeline + "' needs a tuple");
    }
    if (needs_seed(c) && !c.seed) schema("pipeline '" + c.pipeline + "' draws random data and needs a seed");
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    Json j = read_json_file(path);
    return config_from_json(j, std::filesystem::path(path).parent_path().string());
}

Report run_scenario(const ScenarioConfig& cfg) {
    auto it = runners().find(cfg.pipeline);
    if (it == runners().end()) schema("unknown pipeline '" + cfg.pipeline + "'");
    if (needs_seed(cfg) && !cfg.seed) schema("pipeline '" + cfg.pipeline + "' draws random data and needs a seed");
    Report rep;
    Json effective = cfg.to_json();
    rep.meta = {{"pipeline", cfg.pipeline},
                {"config", effective},
                {"config_hash", stable_hash(canonical_dump(effective))},
                {"format", "opmodel-report/1"}};
    rep.meta["seed"] = cfg.seed ? Json(*cfg.seed) : Json();
    Rng rng(cfg.seed.value_or(0));
    auto t0 = std::chrono::steady_clock::now();
    try {
        it->second(cfg, rep, rng);
    } catch (const Error& e) {
        if (e.kind() == "SchemaError") throw;
        rep.add(holds(cfg.pipeline + ".error", false, e.what()));
    } catch (const std::exception& e) {
        rep.add(holds(cfg.pipeline + ".error", false, std::string("InternalError: ") + e.what()));
    }
    auto t1 = std::chrono::steady_clock::now();
    rep.timings_ms.emplace_back(cfg.pipeline, std::chrono::duration<double, std::milli>(t1 - t0).count());
    rep.sort_checks();
    return rep;
}

Json generate_examples(const std::string& kind, std::uint64_t seed, const Json& params) {
    if (!params.is_object()) schema("generator params must be an object");
    Rng rng(seed);
    int n = param_int(params, "n", 2, 1);
    int d = param_int(params, "degree", 4, 1);
    char buf[200];
    if (kTupleKinds.count(kind)) {
        int dim = param_int(params, "dim", 3, 1);
        double r = param_double(params, "row_norm", kind == "contraction" ? 0.4 : 0.8);
        OperatorTuple X = draw_tuple(kind, n, dim, r, rng);
        std::snprintf(buf, sizeof buf, "%s tuple, n=%d, dim=%d, row norm %.3g, mt19937_64 seed %llu", kind.c_str(), n,
                      dim, r, static_cast<unsigned long long>(seed));
        return {{"tuple", tuple_to_json(X)}, {"provenance", buf}};
    }
    if (kind == "identity_series")
        return {{"f", series_tuple_to_json(NcSeriesTuple::identity(n, d))},
                {"provenance", "identity symbol, n=" + std::to_string(n) + ", degree " + std::to_string(d)}};
    if (kind == "triangular_automorphism") {
        int max_deg = param_int(params, "max_deg", 2, 2);
        int terms = param_int(params, "terms", 3, 1);
        double scale = param_double(params, "scale", 0.5);
        NcSeriesTuple f = random_triangular_automorphism(n, d, max_deg, terms, scale, rng);
        NcSeriesTuple g = invert_composition(f);
        std::snprintf(buf, sizeof buf,
                      "triangular automorphism, n=%d, degree %d, words of length 2..%d, %d terms of scale %.3g, "
                      "mt19937_64 seed %llu; g computed by compositional inversion",
                      n, d, max_deg, terms, scale, static_cast<unsigned long long>(seed));
        return {{"f", series_tuple_to_json(f)}, {"g", series_tuple_to_json(g)}, {"provenance", buf}};
    }
    schema("unknown example kind '" + kind + "'");
}

}  // namespace opm
