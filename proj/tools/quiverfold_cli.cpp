// Batch front end: parse (quiver, group, action) documents, run the folding
// constructions and verification batteries, and emit a text table plus a
// machine-readable JSON report. Wall-clock timing goes to stderr only, so
// reports are byte-stable for a fixed seed and input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <quiverfold/cartan.hpp>
#include <quiverfold/fixtures.hpp>
#include <quiverfold/io.hpp>
#include <quiverfold/lie.hpp>
#include <quiverfold/mckay.hpp>
#include <quiverfold/representation.hpp>
#include <quiverfold/roots.hpp>

using namespace quiverfold;

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitSchema = 2;
constexpr int kExitInvalidAction = 3;

std::string type_label(const IntMat& c) {
    TypeClassification cls = classify(c);
    std::ostringstream os;
    for (size_t t = 0; t < cls.components.size(); ++t) {
        if (t) os << " + ";
        switch (cls.components[t].kind) {
            case TypeClassification::Kind::finite: os << cls.components[t].label; break;
            case TypeClassification::Kind::affine: os << "affine"; break;
            case TypeClassification::Kind::indefinite: os << "indefinite"; break;
        }
    }
    return os.str();
}

std::string matrix_inline(const IntMat& m) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m.rows; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < m.cols; ++j) os << (j ? "," : "") << m.at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

InputDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_input(buf.str());
}

bool validated(const InputDocument& doc, Report& rep) {
    ValidationReport vr = validate_action(doc.quiver, doc.action);
    rep.absorb(vr, "action ");
    return vr.valid();
}

void rows_mckay(const FoldingMaps& fm, Report& rep) {
    rep.add("cover-vertices", true, std::to_string(fm.rank_qhat()));
    rep.add("cover-arrows", true, std::to_string(fm.mk.quiver.num_arrows()));
    rep.add("cover-type", true, type_label(cartan_of_quiver(fm.mk.quiver)));
    rep.absorb(validate_action(fm.mk.quiver, fm.mk.induced), "induced ");
}

void rows_fold(const FoldingMaps& fm, Report& rep) {
    std::ostringstream names;
    for (size_t t = 0; t < fm.gamma.names.size(); ++t)
        names << (t ? " " : "") << fm.gamma.names[t];
    rep.add("fold-vertices", true, names.str());
    std::ostringstream d;
    for (size_t t = 0; t < fm.gamma.d.size(); ++t) d << (t ? "," : "") << fm.gamma.d[t];
    rep.add("fold-symmetrizer", true, d.str());
    rep.add("fold-form", true, matrix_inline(fm.gamma.b));
    rep.add("fold-cartan", true, matrix_inline(fm.gamma.c));
    rep.add("fold-type", true, type_label(fm.gamma.c));
}

void rows_duality(const Quiver& q, const MonomialAction& act, Report& rep) {
    DualityReport dual = dual_check(q, act);
    rep.add("dual-cartan-transposed", dual.c_transposed);
    rep.add("dual-symmetrizer-inverted", dual.d_dual);
    rep.add("dual-form-rescaled", dual.b_dual);
    QuiverIso iso = double_mckay_check(q, act);
    std::ostringstream w;
    if (iso.found)
        for (size_t v = 0; v < iso.vertex_map.size(); ++v)
            w << (v ? " " : "") << v << "->" << iso.vertex_map[v];
    rep.add("double-cover-isomorphism", iso.found, iso.found ? w.str() : iso.profile);
}

void rows_roots(const FoldingMaps& fm, long long height, Report& rep) {
    struct Entry {
        const char* tag;
        const BilinearForm& form;
    } entries[] = {{"base", fm.form_q}, {"fold", fm.form_gamma}, {"cover", fm.form_qhat}};
    for (const auto& e : entries) {
        RootSystemView rs = enumerate_roots(e.form, height);
        rep.add(std::string(e.tag) + "-positive-real", true, std::to_string(rs.real_pos.size()));
        rep.add(std::string(e.tag) + "-positive-imaginary", true,
                std::to_string(rs.imag_pos.size()));
        if (rs.finite_type)
            rep.add(std::string(e.tag) + "-enumeration", true, "finite type, complete");
        else
            rep.add_inconclusive(std::string(e.tag) + "-enumeration",
                                 "bounded at height " + std::to_string(rs.height_bound));
    }
}

void rows_verify_fold_roots(const FoldingMaps& fm, long long height, long long seed, Report& rep) {
    FoldTheoremReport ft = verify_fold_theorem(fm, height);
    rep.add("image-in-fold-roots", ft.image_in_roots);
    rep.add("fiber-surjectivity", ft.surjective);
    rep.add("real-fibers-single-orbit", ft.fibers_real_single_orbit);
    rep.add("norm-fiber-counts", ft.norm_counts);
    rep.add("preimage-cover", ft.pi_onto);
    if (ft.complete)
        rep.add("enumeration", true, "complete");
    else
        rep.add_inconclusive("enumeration", "bounded at height " + std::to_string(ft.height_bound));
    if (!ft.ok()) rep.add("fold-theorem-detail", false, ft.failures);
    rep.absorb(verify_folding_identities(fm, 2, 2, 200, static_cast<unsigned long long>(seed)),
               "identity ");
}

void rows_verify_fixed_algebra(const FoldingMaps& fm, Report& rep) {
    FoldRealizationReport fr = verify_fold_realization(fm);
    rep.absorb(fr.checks, "realization ");
    bool finite = classify(cartan_of_quiver(fm.q)).all_finite() &&
                  classify(cartan_of_quiver(fm.mk.quiver)).all_finite();
    if (!finite) {
        rep.add_inconclusive("fixed-subalgebra",
                             "not of finite type; realization checks only");
        return;
    }
    FixedAlgebraReport fa = verify_fixed_algebra(fm);
    rep.absorb(fa.checks, "algebra ");
    std::ostringstream dims;
    dims << "ambient " << fa.dim_algebra << ", fixed " << fa.dim_fixed << ", expected "
         << fa.dim_expected;
    rep.add("algebra-dimension-values", true, dims.str());
}

void rows_example_51(long long seed, Report& rep) {
    FixtureCase fx = fixture_star_z6();
    if (!validated({fx.quiver, fx.action}, rep)) return;
    FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
    rep.add("cover-has-8-vertices", fm.rank_qhat() == 8, std::to_string(fm.rank_qhat()));
    rep.add("cover-has-6-arrows", fm.mk.quiver.num_arrows() == 6,
            std::to_string(fm.mk.quiver.num_arrows()));
    std::string cover = type_label(cartan_of_quiver(fm.mk.quiver));
    rep.add("cover-type-two-D4", cover == "D4 + D4", cover);
    std::string fold = type_label(fm.gamma.c);
    rep.add("fold-type-G2", fold == "G2", fold);
    RootSystemView rg = enumerate_roots(fm.form_gamma);
    rep.add("fold-positive-roots-6", rg.real_pos.size() == 6, std::to_string(rg.real_pos.size()));
    RootSystemView rq = enumerate_roots(fm.form_q);
    rep.add("base-positive-roots-12", rq.real_pos.size() == 12, std::to_string(rq.real_pos.size()));
    FoldTheoremReport ft = verify_fold_theorem(fm);
    rep.add("fold-roots-theorem", ft.ok() && ft.complete, ft.ok() ? "" : ft.failures);
    bool mixed = false;
    for (const FoldTheoremRow& r : ft.rows)
        if (r.root == LatticeVector({1, 1})) mixed = (r.fiber_size == 6 && r.single_orbit);
    rep.add("mixed-root-fiber-size-6", mixed);
    FixedAlgebraReport fa = verify_fixed_algebra(fm);
    rep.add("fixed-algebra-checks", fa.ok());
    rep.add("fixed-dimension-14", fa.dim_fixed == 14 && fa.dim_expected == 14,
            std::to_string(fa.dim_fixed) + " of ambient " + std::to_string(fa.dim_algebra));
    OrbitModuleReport om = verify_orbit_modules(fm, seed);
    rep.add("orbit-modules", om.ok());
    rows_duality(fx.quiver, fx.action, rep);
}

void rows_example_52(long long seed, Report& rep) {
    FixtureCase fx = fixture_double_a5();
    if (!validated({fx.quiver, fx.action}, rep)) return;
    FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
    rep.add("cover-has-4-vertices", fm.rank_qhat() == 4, std::to_string(fm.rank_qhat()));
    std::string cover = type_label(cartan_of_quiver(fm.mk.quiver));
    rep.add("cover-type-D4", cover == "D4", cover);
    IntMat want(3, 3);
    long long entries[9] = {2, -1, 0, -1, 2, -1, 0, -2, 2};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) want.at(i, j) = entries[3 * i + j];
    rep.add("fold-cartan-matrix", fm.gamma.c == want, matrix_inline(fm.gamma.c));
    FixedAlgebraReport fa = verify_fixed_algebra(fm);
    rep.add("fixed-algebra-checks", fa.ok());
    rep.add("fixed-dimension-21", fa.dim_fixed == 21 && fa.dim_expected == 21,
            std::to_string(fa.dim_fixed) + " of ambient " + std::to_string(fa.dim_algebra));
    OrbitModuleReport om = verify_orbit_modules(fm, seed);
    rep.add("orbit-modules", om.ok());
    rows_duality(fx.quiver, fx.action, rep);
}

long long lie_dimension_from_roots(const BilinearForm& form) {
    RootSystemView rs = enumerate_roots(form);
    return 2 * static_cast<long long>(rs.real_pos.size()) + form.rank();
}

void fold_table_row(const FixtureCase& fx, long long expected, const char* tag, Report& rep) {
    FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
    long long dim_fold = lie_dimension_from_roots(fm.form_gamma);
    FiniteLieAlgebra cover = build_finite_lie_algebra(fm.mk.quiver);
    long long dim_fixed = fixed_subalgebra(cover, lift_group_action(cover, fm.mk.induced)).dim();
    std::ostringstream w;
    w << "fold " << type_label(fm.gamma.c) << " dim " << dim_fold << ", cover "
      << type_label(cartan_of_quiver(fm.mk.quiver)) << " fixed part dim " << dim_fixed
      << ", closed form " << expected;
    rep.add(std::string(tag) + "-dimensions-agree", dim_fold == dim_fixed && dim_fold == expected,
            w.str());
}

void rows_fold_table(int n, Report& rep) {
    if (n < 1 || n > 8) {
        rep.add("table-parameter", false, "n must lie between 1 and 8");
        return;
    }
    fold_table_row(fixture_path_fold(n), (2LL * n + 3) * (n + 1), "path-fold", rep);
    if (n >= 3)
        fold_table_row(fixture_fork_fold(n), (2LL * n - 1) * (n - 1), "fork-fold", rep);
    else
        rep.add_inconclusive("fork-fold-dimensions-agree",
                             "the fork family needs n >= 3; row skipped");
}

int emit(const Report& rep, const std::string& out_path) {
    std::cout << report_to_table(rep);
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot write report to " << out_path << "\n";
        return kExitChecksFailed;
    }
    out << report_to_json(rep).dump(2) << "\n";
    return rep.all_pass() ? 0 : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"McKay covers, valued-graph folds, root systems and fixed subalgebras\n"
                 "for quivers with an admissible monomial action of a finite abelian group"};
    app.require_subcommand(1);

    std::string out_path = "report.json";
    long long seed = 12345;
    long long height = -1;
    int table_n = 3;
    std::string in_mckay, in_fold, in_roots, in_vfr, in_vfa, in_vd;

    app.add_option("--out", out_path, "path of the JSON report")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();

    CLI::App* sc_mckay = app.add_subcommand("mckay", "build the character cover and its induced action");
    sc_mckay->add_option("input", in_mckay, "input document")->required();
    CLI::App* sc_fold = app.add_subcommand("fold", "fold to the valued graph and run the duality checks");
    sc_fold->add_option("input", in_fold, "input document")->required();
    CLI::App* sc_roots = app.add_subcommand("roots", "enumerate the three root systems");
    sc_roots->add_option("input", in_roots, "input document")->required();
    sc_roots->add_option("--height", height, "height bound for infinite systems");

    CLI::App* sc_verify = app.add_subcommand("verify", "run a verification battery");
    sc_verify->require_subcommand(1);
    CLI::App* sc_vfr = sc_verify->add_subcommand(
        "fold-roots", "root fibers, orbit counts and the box identities");
    sc_vfr->add_option("input", in_vfr, "input document")->required();
    sc_vfr->add_option("--height", height, "height bound for infinite systems");
    CLI::App* sc_vfa = sc_verify->add_subcommand(
        "fixed-algebra", "realization checks plus the fixed-subalgebra comparison");
    sc_vfa->add_option("input", in_vfa, "input document")->required();
    CLI::App* sc_vd = sc_verify->add_subcommand("duality", "dual fold data and the double-cover isomorphism");
    sc_vd->add_option("input", in_vd, "input document")->required();

    CLI::App* sc_examples = app.add_subcommand("examples", "run the built-in worked examples");
    sc_examples->require_subcommand(1);
    CLI::App* sc_ex51 = sc_examples->add_subcommand("ex51", "hexagonal star with a Z/6 action");
    CLI::App* sc_ex52 = sc_examples->add_subcommand("ex52", "doubled five-vertex path with Z/2 x Z/2");
    CLI::App* sc_table = sc_examples->add_subcommand("fold-table", "the two parametric fold families");
    sc_table->add_option("--n", table_n, "family parameter")->capture_default_str();

    for (CLI::App* s : {sc_mckay, sc_fold, sc_roots, sc_verify, sc_vfr, sc_vfa, sc_vd,
                        sc_examples, sc_ex51, sc_ex52, sc_table})
        s->fallthrough();

    CLI11_PARSE(app, argc, argv);

    auto started = std::chrono::steady_clock::now();
    Report rep;
    rep.seed = seed;
    // Reconstructed from the parse, not argv, so --out never affects the report bytes.
    std::ostringstream cmd;
    if (sc_mckay->parsed()) cmd << "mckay " << in_mckay;
    else if (sc_fold->parsed()) cmd << "fold " << in_fold;
    else if (sc_roots->parsed()) cmd << "roots " << in_roots;
    else if (sc_vfr->parsed()) cmd << "verify fold-roots " << in_vfr;
    else if (sc_vfa->parsed()) cmd << "verify fixed-algebra " << in_vfa;
    else if (sc_vd->parsed()) cmd << "verify duality " << in_vd;
    else if (sc_ex51->parsed()) cmd << "examples ex51";
    else if (sc_ex52->parsed()) cmd << "examples ex52";
    else cmd << "examples fold-table --n " << table_n;
    if (height >= 0 && (sc_roots->parsed() || sc_vfr->parsed())) cmd << " --height " << height;
    rep.command = cmd.str();

    int rc = 0;
    try {
        if (sc_ex51->parsed()) {
            rep.fixture = "star-z6";
            rows_example_51(seed, rep);
        } else if (sc_ex52->parsed()) {
            rep.fixture = "double-a5";
            rows_example_52(seed, rep);
        } else if (sc_table->parsed()) {
            rep.fixture = "fold-table n=" + std::to_string(table_n);
            rows_fold_table(table_n, rep);
        } else {
            std::string path = sc_mckay->parsed()  ? in_mckay
                               : sc_fold->parsed() ? in_fold
                               : sc_roots->parsed() ? in_roots
                               : sc_vfr->parsed()  ? in_vfr
                               : sc_vfa->parsed()  ? in_vfa
                                                    : in_vd;
            InputDocument doc = load_document(path);
            rep.fixture = "input " + path;
            if (!validated(doc, rep)) {
                emit(rep, out_path);
                std::cerr << "the action failed validation\n";
                return kExitInvalidAction;
            }
            FoldingMaps fm = make_fold_maps(doc.quiver, doc.action);
            if (sc_mckay->parsed()) rows_mckay(fm, rep);
            else if (sc_fold->parsed()) {
                rows_fold(fm, rep);
                rows_duality(doc.quiver, doc.action, rep);
            } else if (sc_roots->parsed()) rows_roots(fm, height, rep);
            else if (sc_vfr->parsed()) rows_verify_fold_roots(fm, height, seed, rep);
            else if (sc_vfa->parsed()) rows_verify_fixed_algebra(fm, rep);
            else rows_duality(doc.quiver, doc.action, rep);
        }
        rc = emit(rep, out_path);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        rc = kExitSchema;
    } catch (const std::exception& e) {
        rep.add("run", false, e.what());
        emit(rep, out_path);
        rc = kExitChecksFailed;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << "elapsed_ms: " << elapsed << "\n";
    return rc;
}
