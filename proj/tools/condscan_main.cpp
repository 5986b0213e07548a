// condscan: detects dependence between real-valued columns by scanning
// Pearson correlation conditioned on families of interval rectangles.

#include "condscan/csv.hpp"
#include "condscan/discrete.hpp"
#include "condscan/generators.hpp"
#include "condscan/grid.hpp"
#include "condscan/inference.hpp"
#include "condscan/moments.hpp"
#include "condscan/multivar.hpp"
#include "condscan/ols.hpp"
#include "condscan/report.hpp"
#include "condscan/scan.hpp"
#include "condscan/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace condscan;

struct CommonOpts {
    std::string input;
    std::string gen;
    std::size_t n = 10000;
    double p = 0.5; // mixture-fp parameter
    std::string cols;
    std::string out;
    std::string format = "text";
    std::uint64_t seed = 20260810;
    int perm = 0;
    std::int64_t m_min = 30;
    int levels = 12;
};

void add_source_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--input", o.input, "CSV file with a header row");
    cmd->add_option("--gen", o.gen,
                    "built-in generator: sign-flip, mixture-fp, mixed, hidden-blocks, "
                    "xor-cube, indep-gauss, indep-uniform");
    cmd->add_option("--n", o.n, "rows to generate (with --gen)");
    cmd->add_option("--p", o.p, "mixture weight for mixture-fp");
}

void add_report_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out, "write the report here instead of stdout");
    cmd->add_option("--format", o.format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--seed", o.seed, "seed for generators and permutation tests");
    cmd->add_option("--perm", o.perm, "permutation replicates (0 disables, else >= 19)");
}

std::vector<std::vector<double>> generate_columns(const std::string& name, std::size_t n,
                                                  double p, std::uint64_t seed,
                                                  std::vector<std::string>& header) {
    if (name == "sign-flip" || name == "mixed" || name == "hidden-blocks" ||
        name == "indep-gauss" || name == "indep-uniform") {
        PairedSample s;
        if (name == "sign-flip") s = gen_sign_flip(n, seed);
        else if (name == "mixed") s = gen_mixed(n, seed);
        else if (name == "hidden-blocks") s = gen_hidden_blocks(n, seed);
        else if (name == "indep-gauss") s = gen_indep_gauss(n, seed);
        else s = gen_indep_uniform(n, seed);
        header = {"x", "y"};
        return {std::move(s.x), std::move(s.y)};
    }
    if (name == "xor-cube") {
        MultiSample s = gen_xor_cube(n, seed);
        header = {"x", "y", "z"};
        return std::move(s.columns);
    }
    if (name == "mixture-fp") {
        header = {"x"};
        return {gen_mixture_fp(n, p, seed)};
    }
    throw std::invalid_argument("unknown generator '" + name + "'");
}

struct LoadedData {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::string source; // config echo
};

LoadedData load_columns(const CommonOpts& o, std::size_t want_min_cols) {
    if (o.input.empty() == o.gen.empty()) {
        throw std::invalid_argument("exactly one of --input or --gen is required");
    }
    LoadedData data;
    if (!o.gen.empty()) {
        data.columns = generate_columns(o.gen, o.n, o.p, o.seed, data.names);
        data.source = o.gen;
    } else {
        Table t = read_csv(o.input);
        data.names = t.header;
        data.columns = std::move(t.columns);
        data.source = o.input;
    }
    if (!o.cols.empty()) {
        Table view;
        view.header = data.names;
        view.columns = data.columns;
        const std::vector<std::size_t> idx = resolve_columns(view, o.cols);
        std::vector<std::string> names;
        std::vector<std::vector<double>> cols;
        for (std::size_t i : idx) {
            names.push_back(data.names[i]);
            cols.push_back(data.columns[i]);
        }
        data.names = std::move(names);
        data.columns = std::move(cols);
    }
    if (data.columns.size() < want_min_cols) {
        throw std::invalid_argument("need at least " + std::to_string(want_min_cols) +
                                    " columns; got " + std::to_string(data.columns.size()));
    }
    if (data.columns.front().size() < 2) {
        throw DataError("fewer than 2 usable rows");
    }
    return data;
}

void write_report(const ReportNode& doc, const CommonOpts& o) {
    const std::string body = o.format == "structured" ? emit_structured(doc) : emit_text(doc);
    if (o.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw DataError("cannot open output file: " + o.out);
        f << body;
    }
}

ReportNode rect_node(const Rectangle& rect) {
    return ReportNode::str(rect.describe());
}

ReportNode scan_node(const ScanReport& rep) {
    ReportNode n = ReportNode::object();
    n.set("family", ReportNode::str(rep.family));
    n.set("m_min", ReportNode::integer(rep.m_min));
    n.set("total_rectangles", ReportNode::integer(static_cast<std::int64_t>(rep.total_rects)));
    n.set("skipped", ReportNode::integer(static_cast<std::int64_t>(rep.skipped)));
    n.set("truncated", ReportNode::boolean(rep.truncated));
    n.set("max_abs_cor", ReportNode::num(rep.max_abs_cor));
    if (rep.has_argmax) {
        ReportNode a = ReportNode::object();
        a.set("rect", rect_node(rep.argmax.rect));
        a.set("m", ReportNode::integer(rep.argmax.m));
        a.set("cov", ReportNode::num(rep.argmax.cov));
        a.set("cor", ReportNode::num(rep.argmax.cor));
        if (rep.argmax_d > 2) {
            a.set("pair", ReportNode::str(std::to_string(rep.argmax.pair_i) + "," +
                                          std::to_string(rep.argmax.pair_j)));
        }
        if (rep.argmax_d >= 2) {
            ReportNode m = ReportNode::array();
            for (std::size_t i = 0; i < rep.argmax_d; ++i) {
                ReportNode row = ReportNode::array();
                for (std::size_t j = 0; j < rep.argmax_d; ++j) {
                    row.push(ReportNode::num(rep.argmax_corr[i * rep.argmax_d + j]));
                }
                m.push(std::move(row));
            }
            a.set("cond_corr_matrix", std::move(m));
        }
        n.set("argmax", std::move(a));
    }
    return n;
}

ReportNode permutation_node(const ScanConfig& cfg, const PermutationTestResult& r) {
    ReportNode n = ReportNode::object();
    n.set("statistic", ReportNode::str("max |cond cor|, " + cfg.describe()));
    n.set("B", ReportNode::integer(r.B));
    n.set("seed", ReportNode::integer(static_cast<std::int64_t>(r.seed)));
    n.set("observed_stat", ReportNode::num(r.observed_stat));
    n.set("p_value", ReportNode::num(r.p_value));
    n.set("null_q95", ReportNode::num(r.null_quantile(0.95)));
    return n;
}

ReportNode support_node(const SupportReport& s) {
    ReportNode n = ReportNode::object();
    n.set("grid", ReportNode::str(std::to_string(s.gx) + "x" + std::to_string(s.gy)));
    n.set("flagged_cells", ReportNode::integer(static_cast<std::int64_t>(s.flagged)));
    n.set("fraction", ReportNode::num(s.fraction));
    ReportNode cells = ReportNode::array();
    for (const auto& [i, j] : s.cells) {
        cells.push(ReportNode::str(std::to_string(i) + "," + std::to_string(j)));
    }
    n.set("cells", std::move(cells));
    return n;
}

void write_records_csv(const std::string& path, const ScanReport& rep, std::size_t dims) {
    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
    const char* axis_names[] = {"x", "y", "z", "w"};
    for (std::size_t a = 0; a < dims; ++a) {
        header.push_back(std::string(axis_names[a]) + "_lo");
        header.push_back(std::string(axis_names[a]) + "_hi");
    }
    header.insert(header.end(), {"m", "skipped", "cov", "cor"});
    cols.assign(header.size(), {});
    for (const RectRecord& rec : rep.records) {
        std::size_t c = 0;
        for (std::size_t a = 0; a < dims; ++a) {
            cols[c++].push_back(rec.rect.axis(a).lo());
            cols[c++].push_back(rec.rect.axis(a).hi());
        }
        cols[c++].push_back(static_cast<double>(rec.m));
        cols[c++].push_back(rec.skipped ? 1.0 : 0.0);
        cols[c++].push_back(rec.cov);
        cols[c++].push_back(rec.cor);
    }
    write_csv(path, header, cols);
}

ReportNode base_doc(const std::string& command) {
    ReportNode doc = ReportNode::object();
    doc.set("version", ReportNode::str(kVersion));
    doc.set("command", ReportNode::str(command));
    return doc;
}

ReportNode config_node(const CommonOpts& o, const LoadedData& data) {
    ReportNode c = ReportNode::object();
    if (!o.input.empty()) {
        c.set("input", ReportNode::str(o.input));
    } else {
        c.set("generator", ReportNode::str(o.gen));
        c.set("n", ReportNode::integer(static_cast<std::int64_t>(o.n)));
        if (o.gen == "mixture-fp") c.set("p", ReportNode::num(o.p));
    }
    ReportNode names = ReportNode::array();
    for (const std::string& s : data.names) names.push(ReportNode::str(s));
    c.set("columns", std::move(names));
    c.set("rows", ReportNode::integer(static_cast<std::int64_t>(data.columns.front().size())));
    c.set("seed", ReportNode::integer(static_cast<std::int64_t>(o.seed)));
    return c;
}

int run_scan(const CommonOpts& o, const std::string& family_name, double eps, double stride,
             const std::string& records_path) {
    const LoadedData data = load_columns(o, 2);
    PairedSample sample{data.columns[0], data.columns[1]};

    ScanConfig cfg;
    cfg.levels = o.levels;
    cfg.m_min = o.m_min;
    ConditioningFamily family = ConditioningFamily::bounded_grid(o.levels);
    if (family_name == "tails") {
        family = ConditioningFamily::upper_tails(o.levels);
        cfg.mode = ScanConfig::Mode::tails;
    } else if (family_name == "local") {
        if (!(eps > 0.0)) throw std::invalid_argument("--family local requires --eps > 0");
        cfg.mode = ScanConfig::Mode::local;
        cfg.eps = eps;
        cfg.stride = stride;
    } else if (family_name != "bounded") {
        throw std::invalid_argument("unknown family '" + family_name + "'");
    }

    ScanReport rep;
    if (cfg.mode == ScanConfig::Mode::local) {
        rep = scan_local(sample, eps, stride > 0.0 ? stride : eps / 2.0, o.m_min);
    } else {
        rep = scan(sample, family, o.levels, o.m_min);
    }

    ReportNode doc = base_doc(family_name == "local" ? "local-scan" : "scan");
    ReportNode cfg_node = config_node(o, data);
    cfg_node.set("family", ReportNode::str(rep.family));
    cfg_node.set("levels", ReportNode::integer(o.levels));
    cfg_node.set("m_min", ReportNode::integer(o.m_min));
    if (cfg.mode == ScanConfig::Mode::local) {
        cfg_node.set("eps", ReportNode::num(eps));
        cfg_node.set("stride", ReportNode::num(stride > 0.0 ? stride : eps / 2.0));
    }
    cfg_node.set("perm", ReportNode::integer(o.perm));
    doc.set("config", std::move(cfg_node));
    doc.set("scan", scan_node(rep));

    // The empty-cell diagnostic matters most for local scans, whose
    // conclusions rest on a product-support assumption; emit it whenever
    // a grid is buildable.
    try {
        const QuantileGrid grid = build_grid(sample, o.levels);
        doc.set("support_check", support_node(support_product_check(sample, grid)));
    } catch (const std::invalid_argument&) {
        // n < levels: no grid, no diagnostic
    }
    if (o.perm > 0) {
        doc.set("permutation",
                permutation_node(cfg, permutation_test(sample, cfg, o.perm, o.seed)));
    }
    write_report(doc, o);
    if (!records_path.empty()) write_records_csv(records_path, rep, 2);
    return 0;
}

int run_mutual(const CommonOpts& o, std::size_t budget) {
    const LoadedData data = load_columns(o, 2);
    MultiSample sample{data.columns};

    const ScanReport rep = mutual_scan(sample, o.levels, o.m_min, budget);

    ReportNode doc = base_doc("mutual-scan");
    ReportNode cfg_node = config_node(o, data);
    cfg_node.set("family", ReportNode::str(rep.family));
    cfg_node.set("levels", ReportNode::integer(o.levels));
    cfg_node.set("m_min", ReportNode::integer(o.m_min));
    cfg_node.set("budget", ReportNode::integer(static_cast<std::int64_t>(budget)));
    cfg_node.set("perm", ReportNode::integer(o.perm));
    doc.set("config", std::move(cfg_node));
    doc.set("scan", scan_node(rep));

    if (o.perm > 0) {
        ScanConfig cfg;
        cfg.mode = ScanConfig::Mode::mutual;
        cfg.levels = o.levels;
        cfg.m_min = o.m_min;
        cfg.budget = budget;
        doc.set("permutation",
                permutation_node(cfg, permutation_test(sample, cfg, o.perm, o.seed)));
    }
    write_report(doc, o);
    return 0;
}

int run_residual_diag(const CommonOpts& o, const std::string& response,
                      const std::string& predictors) {
    if (o.input.empty()) throw std::invalid_argument("residual-diag requires --input");
    Table t = read_csv(o.input);
    if (t.rows() < 2) throw DataError("fewer than 2 usable rows");
    const std::vector<std::size_t> resp_idx = resolve_columns(t, response);
    if (resp_idx.size() != 1) throw std::invalid_argument("--response selects exactly one column");
    const std::vector<std::size_t> pred_idx = resolve_columns(t, predictors);
    if (pred_idx.size() < 2) {
        throw std::invalid_argument("residual-diag requires >= 2 predictor columns");
    }

    std::vector<std::vector<double>> preds;
    std::vector<std::string> pred_names;
    for (std::size_t i : pred_idx) {
        preds.push_back(t.columns[i]);
        pred_names.push_back(t.header[i]);
    }
    const OlsFit fit = ols_fit(preds, t.columns[resp_idx[0]], pred_names);

    PairedSample pairs{fit.fitted, fit.resid};

    // Zero-variance residuals (exact fit): scans would only report the
    // delta convention, so flag it.
    auto sd = [](const std::vector<double>& v) {
        CondMoments mom = conditional_moments(PairedSample{v, v}, Rectangle::full(2));
        return std::sqrt(mom.var_x());
    };
    const double resid_sd = sd(fit.resid);
    const double resp_sd = sd(t.columns[resp_idx[0]]);
    const bool degenerate_resid = !(resid_sd > 1e-9 * std::max(resp_sd, 1e-300));

    const CondMoments global = conditional_moments(pairs, Rectangle::full(2));
    const double global_cor = conditional_correlation(global);
    if (!degenerate_resid && std::fabs(global_cor) > 1e-8) {
        throw std::logic_error("OLS residuals are not orthogonal to fitted values");
    }

    const ScanReport bounded = scan(pairs, ConditioningFamily::bounded_grid(o.levels),
                                    o.levels, o.m_min);
    const ScanReport upper = scan(pairs, ConditioningFamily::upper_tails(o.levels),
                                  o.levels, o.m_min);
    // Lower tails of the fitted values: upper tails of the negated axis.
    PairedSample flipped{fit.fitted, fit.resid};
    for (double& v : flipped.x) v = -v;
    ScanReport lower = scan(flipped, ConditioningFamily::upper_tails(o.levels),
                            o.levels, o.m_min);
    lower.family = "lower-tails(levels=" + std::to_string(o.levels) + ")";

    ReportNode doc = base_doc("residual-diag");
    ReportNode cfg_node = ReportNode::object();
    cfg_node.set("input", ReportNode::str(o.input));
    cfg_node.set("response", ReportNode::str(t.header[resp_idx[0]]));
    ReportNode pn = ReportNode::array();
    for (const std::string& s : pred_names) pn.push(ReportNode::str(s));
    cfg_node.set("predictors", std::move(pn));
    cfg_node.set("rows", ReportNode::integer(static_cast<std::int64_t>(t.rows())));
    cfg_node.set("levels", ReportNode::integer(o.levels));
    cfg_node.set("m_min", ReportNode::integer(o.m_min));
    cfg_node.set("seed", ReportNode::integer(static_cast<std::int64_t>(o.seed)));
    cfg_node.set("perm", ReportNode::integer(o.perm));
    doc.set("config", std::move(cfg_node));

    ReportNode ols = ReportNode::object();
    ReportNode cofs = ReportNode::array();
    for (double c : fit.coef) cofs.push(ReportNode::num(c));
    ols.set("coefficients", std::move(cofs));
    ols.set("global_cor_fitted_resid", ReportNode::num(global_cor));
    ols.set("zero_variance_residuals", ReportNode::boolean(degenerate_resid));
    doc.set("ols", std::move(ols));

    doc.set("bounded_scan", scan_node(bounded));
    doc.set("upper_tail_scan", scan_node(upper));
    doc.set("lower_tail_scan", scan_node(lower));

    if (o.perm > 0 && !degenerate_resid) {
        ScanConfig cfg;
        cfg.mode = ScanConfig::Mode::bounded;
        cfg.levels = o.levels;
        cfg.m_min = o.m_min;
        doc.set("permutation",
                permutation_node(cfg, permutation_test(pairs, cfg, o.perm, o.seed)));
    }
    write_report(doc, o);
    return 0;
}

int run_generate(const CommonOpts& o, const std::string& out_path) {
    if (o.gen.empty()) throw std::invalid_argument("generate requires --gen");
    if (out_path.empty()) throw std::invalid_argument("generate requires --out");
    std::vector<std::string> header;
    const std::vector<std::vector<double>> cols =
        generate_columns(o.gen, o.n, o.p, o.seed, header);
    write_csv(out_path, header, cols);
    return 0;
}

int run_oracle_check(const CommonOpts& o, int joints, int max_support) {
    if (joints < 1) throw std::invalid_argument("--joints must be >= 1");
    if (max_support < 2 || max_support > 6) {
        throw std::invalid_argument("--max-support must be in [2, 6]");
    }
    Rng rng(o.seed);
    int agree = 0;
    int independent = 0;
    for (int k = 0; k < joints; ++k) {
        const bool make_indep = (k % 2) == 0;
        const DiscreteJoint joint = make_indep ? random_product_joint(rng, max_support)
                                               : random_dependent_joint(rng, max_support);
        const bool ind = oracle_is_independent(joint);
        const bool unc = all_atom_rects_uncorrelated(joint);
        if (ind == unc) ++agree;
        if (ind) ++independent;
    }

    ReportNode doc = base_doc("oracle-check");
    ReportNode cfg_node = ReportNode::object();
    cfg_node.set("joints", ReportNode::integer(joints));
    cfg_node.set("max_support", ReportNode::integer(max_support));
    cfg_node.set("seed", ReportNode::integer(static_cast<std::int64_t>(o.seed)));
    doc.set("config", std::move(cfg_node));
    ReportNode res = ReportNode::object();
    res.set("agree", ReportNode::integer(agree));
    res.set("independent", ReportNode::integer(independent));
    res.set("dependent", ReportNode::integer(joints - independent));
    res.set("all_agree", ReportNode::boolean(agree == joints));
    doc.set("result", std::move(res));
    write_report(doc, o);
    return agree == joints ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conditional-correlation rectangle scanner"};
    app.require_subcommand(1);

    CommonOpts o;
    double eps = 0.0, stride = 0.0;
    std::string family = "bounded", records_path, response, predictors, gen_out;
    std::size_t budget = 20000;
    int joints = 200, max_support = 4;

    CLI::App* scan_cmd = app.add_subcommand("scan", "scan a pair of columns");
    add_source_options(scan_cmd, o);
    scan_cmd->add_option("--cols", o.cols, "two columns (names or 0-based indices)");
    scan_cmd->add_option("--family", family, "bounded|tails|local")
        ->check(CLI::IsMember({"bounded", "tails", "local"}));
    scan_cmd->add_option("--levels", o.levels, "quantile levels per axis");
    scan_cmd->add_option("--eps", eps, "window diameter for --family local");
    scan_cmd->add_option("--stride", stride, "window offset step (default eps/2)");
    scan_cmd->add_option("--m-min", o.m_min, "minimum points per rectangle");
    scan_cmd->add_option("--records", records_path, "write per-rectangle table (CSV)");
    add_report_options(scan_cmd, o);

    CLI::App* local_cmd = app.add_subcommand("local-scan", "scan small overlapping windows");
    add_source_options(local_cmd, o);
    local_cmd->add_option("--cols", o.cols, "two columns");
    local_cmd->add_option("--eps", eps, "window diameter")->required();
    local_cmd->add_option("--stride", stride, "window offset step (default eps/2)");
    local_cmd->add_option("--m-min", o.m_min, "minimum points per window");
    local_cmd->add_option("--records", records_path, "write per-window table (CSV)");
    add_report_options(local_cmd, o);

    CLI::App* mutual_cmd = app.add_subcommand("mutual-scan", "scan d columns jointly");
    add_source_options(mutual_cmd, o);
    mutual_cmd->add_option("--cols", o.cols, "columns (default: all)");
    mutual_cmd->add_option("--levels", o.levels, "quantile levels per axis");
    mutual_cmd->add_option("--m-min", o.m_min, "minimum points per hyperrectangle");
    mutual_cmd->add_option("--budget", budget, "maximum hyperrectangles enumerated");
    add_report_options(mutual_cmd, o);

    CLI::App* resid_cmd =
        app.add_subcommand("residual-diag", "regress, then scan (fitted, residual) pairs");
    resid_cmd->add_option("--input", o.input, "CSV file")->required();
    resid_cmd->add_option("--response", response, "response column")->required();
    resid_cmd->add_option("--predictors", predictors, "comma-separated predictor columns")
        ->required();
    resid_cmd->add_option("--levels", o.levels, "quantile levels per axis");
    resid_cmd->add_option("--m-min", o.m_min, "minimum points per rectangle");
    add_report_options(resid_cmd, o);

    CLI::App* gen_cmd = app.add_subcommand("generate", "write a generated sample as CSV");
    add_source_options(gen_cmd, o);
    gen_cmd->add_option("--out", gen_out, "output CSV path")->required();
    gen_cmd->add_option("--seed", o.seed, "generator seed");

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle-check", "discrete-joint independence self-check");
    oracle_cmd->add_option("--joints", joints, "number of random joints");
    oracle_cmd->add_option("--max-support", max_support, "max distinct values per axis");
    add_report_options(oracle_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (scan_cmd->parsed()) return run_scan(o, family, eps, stride, records_path);
        if (local_cmd->parsed()) return run_scan(o, "local", eps, stride, records_path);
        if (mutual_cmd->parsed()) return run_mutual(o, budget);
        if (resid_cmd->parsed()) return run_residual_diag(o, response, predictors);
        if (gen_cmd->parsed()) return run_generate(o, gen_out);
        if (oracle_cmd->parsed()) return run_oracle_check(o, joints, max_support);
        return 1;
    } catch (const condscan::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
