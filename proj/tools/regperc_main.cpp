#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regperc/errors.hpp"
#include "regperc/gaussian_wave.hpp"
#include "regperc/graph.hpp"
#include "regperc/io.hpp"
#include "regperc/level_sets.hpp"
#include "regperc/percolation.hpp"
#include "regperc/spectral.hpp"

namespace {

using namespace regperc;

std::string critical_curve_csv(std::size_t d, const std::vector<CriticalCurveRow>& rows) {
    std::ostringstream out;
    out << "d,lambda_bin,alpha_c_mean,alpha_c_stderr,count\n";
    for (const auto& r : rows)
        out << d << ',' << format_double(r.lambda_bin_center) << ','
            << format_double(r.alpha_c_mean) << ',' << format_double(r.alpha_c_stderr)
            << ',' << r.count << '\n';
    return out.str();
}

std::string model_curve_csv(std::size_t d, const std::vector<ModelCurveRow>& rows,
                            const GrowthRateOptions& opts) {
    std::ostringstream out;
    out << "d,lambda,alpha_c,r_residual,quad_nodes,truncation\n";
    for (const auto& r : rows)
        out << d << ',' << format_double(r.lambda) << ',' << format_double(r.alpha_c)
            << ',' << format_double(r.r_residual) << ',' << opts.quad_nodes << ','
            << format_double(opts.truncation) << '\n';
    return out.str();
}

std::string curve_csv(const RatioCurve& curve) {
    std::ostringstream out;
    out << "alpha,induced,max_component,ratio\n";
    for (std::size_t i = 0; i < curve.size(); ++i)
        out << format_double(curve.thresholds[i]) << ',' << curve.induced_sizes[i] << ','
            << curve.max_component_sizes[i] << ','
            << format_double(static_cast<double>(curve.max_component_sizes[i]) /
                             static_cast<double>(curve.induced_sizes[i]))
            << '\n';
    return out.str();
}

std::vector<double> lambda_grid_for(std::size_t d, std::size_t points) {
    // centers of `points` equal-width bins over the tree spectrum
    const double edge = 2.0 * std::sqrt(static_cast<double>(d) - 1.0);
    const double w = 2.0 * edge / static_cast<double>(points);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = -edge + w * (static_cast<double>(i) + 0.5);
    return grid;
}

int run(int argc, char** argv) {
    CLI::App app{"Level-set percolation of d-regular adjacency eigenvectors and the "
                 "Gaussian wave model on the d-regular tree"};
    app.set_config("--config", "", "plain-text key=value config; flags override file");
    app.require_subcommand(1);
    app.footer("Task seeding: every parallel task uses an RNG seeded by a 64-bit mix of\n"
               "(master seed, task index), so results do not depend on the worker count.\n"
               "REGPERC_WORKERS overrides the worker count of any parallel subcommand.");

    // generate
    auto* gen = app.add_subcommand("generate", "sample a random d-regular graph (pairing model)");
    std::size_t g_n = 1000, g_d = 3, g_restarts = 0;
    std::uint64_t g_seed = 0;
    std::string g_out = "graph.json";
    gen->add_option("--n", g_n, "vertex count")->required();
    gen->add_option("--d", g_d, "degree (>= 3)")->required();
    gen->add_option("--seed", g_seed, "generator seed");
    gen->add_option("--max-restarts", g_restarts, "matching restarts before giving up (0 = 10*d^2)");
    gen->add_option("--out", g_out, "output graph json");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "full adjacency eigendecomposition");
    std::string s_graph, s_out = "eigen.csv", s_vec_prefix = "vector";
    std::vector<std::size_t> s_vectors;
    spec->add_option("--graph", s_graph, "input graph json")->required();
    spec->add_option("--out", s_out, "eigenvalue csv (index,lambda,residual)");
    spec->add_option("--vectors", s_vectors, "indices of eigenvectors to dump");
    spec->add_option("--vector-prefix", s_vec_prefix, "prefix for per-vector csv files");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "largest-level-set ratio curve of one eigenvector");
    std::string w_graph, w_out = "curve.csv";
    std::size_t w_index = 0;
    int w_sign = 1;
    sweep->add_option("--graph", w_graph, "input graph json")->required();
    sweep->add_option("--vector-index", w_index, "eigenvector index (ascending eigenvalues)")->required();
    sweep->add_option("--sign", w_sign, "+1 or -1: sweep f or -f")->check(CLI::IsMember({1, -1}));
    sweep->add_option("--out", w_out, "curve csv (alpha,induced,max_component,ratio)");

    // critical-curve
    auto* cc = app.add_subcommand("critical-curve", "empirical alpha_c(lambda) over an ensemble");
    CriticalCurveParams cc_params;
    std::string cc_out = "critical_curve.csv";
    cc->add_option("--d", cc_params.d, "degree")->required();
    cc->add_option("--n", cc_params.n, "vertex count");
    cc->add_option("--realizations", cc_params.realizations, "number of graphs");
    cc->add_option("--bins", cc_params.lambda_bins, "lambda bins over the tree spectrum");
    cc->add_option("--seed", cc_params.seed, "master seed");
    cc->add_option("--workers", cc_params.workers, "worker threads (0 = auto)");
    cc->add_option("--max-restarts", cc_params.max_restarts, "matching restarts per graph (0 = auto)");
    cc->add_option("--out", cc_out, "output csv");

    // model-phi
    auto* mp = app.add_subcommand("model-phi", "covariance kernel phi(k) of the wave model");
    double mp_lambda = 0.0;
    std::size_t mp_d = 3;
    int mp_kmax = 20;
    std::string mp_out;
    mp->add_option("--d", mp_d, "degree")->required();
    mp->add_option("--lambda", mp_lambda, "spectral point")->required();
    mp->add_option("--kmax", mp_kmax, "largest distance");
    mp->add_option("--out", mp_out, "output csv (stdout when omitted)");

    // model-critical
    auto* mc = app.add_subcommand("model-critical", "alpha_c(lambda) from the wave model");
    std::size_t mc_d = 3, mc_workers = 0;
    std::vector<double> mc_lambdas;
    double mc_lmin = 0.0, mc_lmax = 0.0, mc_step = 0.2, mc_tol = 1e-3;
    GrowthRateOptions mc_opts;
    std::string mc_out = "model_critical.csv";
    mc->add_option("--d", mc_d, "degree")->required();
    mc->add_option("--lambda", mc_lambdas, "explicit lambda values");
    mc->add_option("--lambda-min", mc_lmin, "grid start");
    mc->add_option("--lambda-max", mc_lmax, "grid end");
    mc->add_option("--step", mc_step, "grid step");
    mc->add_option("--quad-nodes", mc_opts.quad_nodes, "Gauss-Legendre nodes (>= 32)");
    mc->add_option("--truncation", mc_opts.truncation, "quadrature window length (>= 6)");
    mc->add_option("--tol", mc_tol, "bisection width tolerance");
    mc->add_option("--workers", mc_workers, "worker threads (0 = auto)");
    mc->add_option("--out", mc_out, "output csv");

    // sample-wave
    auto* sw = app.add_subcommand("sample-wave", "exact Gaussian wave samples on a tree ball");
    std::size_t sw_d = 3, sw_radius = 4, sw_count = 100;
    double sw_lambda = 0.0;
    std::uint64_t sw_seed = 0;
    std::string sw_out = "samples.csv";
    sw->add_option("--d", sw_d, "degree")->required();
    sw->add_option("--lambda", sw_lambda, "spectral point")->required();
    sw->add_option("--radius", sw_radius, "ball radius");
    sw->add_option("--count", sw_count, "number of samples");
    sw->add_option("--seed", sw_seed, "master seed");
    sw->add_option("--out", sw_out, "output csv");

    // fig5
    auto* f5 = app.add_subcommand("fig5", "graph-empirical vs model critical curves");
    CriticalCurveParams f5_params;
    f5_params.lambda_bins = 8;
    GrowthRateOptions f5_opts;
    double f5_tol = 1e-3;
    std::string f5_prefix = "fig5";
    f5->add_option("--d", f5_params.d, "degree")->required();
    f5->add_option("--n", f5_params.n, "vertex count");
    f5->add_option("--realizations", f5_params.realizations, "number of graphs");
    f5->add_option("--bins", f5_params.lambda_bins, "lambda bins");
    f5->add_option("--seed", f5_params.seed, "master seed");
    f5->add_option("--workers", f5_params.workers, "worker threads (0 = auto)");
    f5->add_option("--quad-nodes", f5_opts.quad_nodes, "Gauss-Legendre nodes");
    f5->add_option("--truncation", f5_opts.truncation, "quadrature window length");
    f5->add_option("--tol", f5_tol, "model bisection tolerance");
    f5->add_option("--out-prefix", f5_prefix, "output prefix");

    // plot
    auto* pl = app.add_subcommand("plot", "render a csv as an SVG polyline plot");
    PlotSpec pl_spec;
    pl->add_option("--input", pl_spec.input_csv, "input csv")->required();
    pl->add_option("--x", pl_spec.x_column, "x column")->required();
    pl->add_option("--y", pl_spec.y_column, "y column")->required();
    pl->add_option("--group", pl_spec.group_column, "group column (one polyline per value)");
    pl->add_option("--xlabel", pl_spec.x_label, "x axis label");
    pl->add_option("--ylabel", pl_spec.y_label, "y axis label");
    pl->add_option("--out", pl_spec.output_path, "output svg")->required();

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        Graph g = generate_regular(g_n, g_d, g_seed, g_restarts);
        atomic_write(g_out, graph_to_json(g));
        std::cout << "generated (" << g_n << "," << g_d << ") graph, seed " << g_seed
                  << ", " << g.rejections << " rejected matchings -> " << g_out << "\n";
    } else if (spec->parsed()) {
        Graph g = graph_from_json(read_file(s_graph));
        auto pairs = eigendecompose(g);
        std::ostringstream out;
        out << "index,lambda,residual\n";
        for (std::size_t i = 0; i < pairs.size(); ++i)
            out << i << ',' << format_double(pairs[i].lambda) << ','
                << format_double(pairs[i].residual) << '\n';
        atomic_write(s_out, out.str());
        for (std::size_t idx : s_vectors) {
            if (idx >= pairs.size())
                throw Error(ErrorCode::BadInput,
                            "--vectors index " + std::to_string(idx) + " out of range");
            std::ostringstream vout;
            vout << "vertex,value\n";
            for (std::size_t v = 0; v < g.n; ++v)
                vout << v << ',' << format_double(pairs[idx].vector[v]) << '\n';
            atomic_write(s_vec_prefix + "_" + std::to_string(idx) + ".csv", vout.str());
        }
        std::cout << "decomposed n=" << g.n << " -> " << s_out << "\n";
    } else if (sweep->parsed()) {
        Graph g = graph_from_json(read_file(w_graph));
        auto pairs = eigendecompose(g);
        if (w_index >= pairs.size())
            throw Error(ErrorCode::BadInput, "--vector-index out of range");
        std::vector<double> f = pairs[w_index].vector;
        if (w_sign < 0)
            for (double& x : f) x = -x;
        RatioCurve curve = sweep_ratio_curve(g, f);
        atomic_write(w_out, curve_csv(curve));
        std::cout << "swept eigenvector " << w_index << " (lambda="
                  << format_double(pairs[w_index].lambda) << ") -> " << w_out << "\n";
    } else if (cc->parsed()) {
        auto rows = critical_curve_experiment(cc_params);
        atomic_write(cc_out, critical_curve_csv(cc_params.d, rows));
        std::cout << "critical curve: d=" << cc_params.d << " n=" << cc_params.n << " over "
                  << cc_params.realizations << " graphs -> " << cc_out << "\n";
    } else if (mp->parsed()) {
        WaveModel model(mp_lambda, mp_d);
        std::ostringstream out;
        out << "k,phi\n";
        for (int k = 0; k <= mp_kmax; ++k)
            out << k << ',' << format_double(phi(model, k)) << '\n';
        if (mp_out.empty())
            std::cout << out.str();
        else {
            atomic_write(mp_out, out.str());
            std::cout << "phi(0.." << mp_kmax << ") -> " << mp_out << "\n";
        }
    } else if (mc->parsed()) {
        if (mc_lambdas.empty()) {
            if (mc_lmin >= mc_lmax)
                throw Error(ErrorCode::BadInput,
                            "--lambda-min must be below --lambda-max (or pass --lambda)");
            for (double lam = mc_lmin; lam <= mc_lmax + 1e-12; lam += mc_step)
                mc_lambdas.push_back(lam);
        }
        auto rows = model_curve(mc_d, mc_lambdas, mc_tol, mc_opts, mc_workers);
        atomic_write(mc_out, model_curve_csv(mc_d, rows, mc_opts));
        std::cout << "model alpha_c at " << rows.size() << " spectral points -> " << mc_out
                  << "\n";
    } else if (sw->parsed()) {
        WaveModel model(sw_lambda, sw_d);
        WaveSampleBatch batch = sample_ball(model, sw_radius, sw_count, sw_seed);
        std::ostringstream out;
        out << "# d=" << sw_d << " lambda=" << format_double(sw_lambda)
            << " radius=" << sw_radius << " seed=" << sw_seed << "\n";
        for (std::size_t v = 0; v < batch.ball.size(); ++v) out << (v ? "," : "") << 'v' << v;
        out << '\n';
        for (std::size_t s = 0; s < sw_count; ++s) {
            for (std::size_t v = 0; v < batch.ball.size(); ++v)
                out << (v ? "," : "") << format_double(batch.values(s, v));
            out << '\n';
        }
        atomic_write(sw_out, out.str());
        std::cout << sw_count << " wave samples on |B_" << sw_radius
                  << "|=" << batch.ball.size() << " -> " << sw_out << "\n";
    } else if (f5->parsed()) {
        auto graph_rows = critical_curve_experiment(f5_params);
        auto grid = lambda_grid_for(f5_params.d, f5_params.lambda_bins);
        auto model_rows = model_curve(f5_params.d, grid, f5_tol, f5_opts, f5_params.workers);
        const std::string graph_csv_path = f5_prefix + "-graph.csv";
        const std::string model_csv_path = f5_prefix + "-model.csv";
        atomic_write(graph_csv_path, critical_curve_csv(f5_params.d, graph_rows));
        atomic_write(model_csv_path, model_curve_csv(f5_params.d, model_rows, f5_opts));

        // overlay: synthesize a grouped table and reuse the SVG renderer
        CsvTable table;
        table.columns = {"lambda", "alpha_c", "series"};
        for (const auto& r : graph_rows)
            if (r.count > 0)
                table.rows.push_back({format_double(r.lambda_bin_center),
                                      format_double(r.alpha_c_mean), "graph"});
        for (const auto& r : model_rows)
            table.rows.push_back({format_double(r.lambda), format_double(r.alpha_c), "model"});
        PlotSpec overlay;
        overlay.input_csv = "(fig5)";
        overlay.x_column = "lambda";
        overlay.y_column = "alpha_c";
        overlay.group_column = "series";
        overlay.x_label = "lambda";
        overlay.y_label = "alpha_c";
        atomic_write(f5_prefix + ".svg", render_svg(overlay, table));
        std::cout << "fig5: d=" << f5_params.d << " -> " << graph_csv_path << ", "
                  << model_csv_path << ", " << f5_prefix << ".svg\n";
    } else if (pl->parsed()) {
        plot_svg(pl_spec);
        std::cout << "plotted " << pl_spec.input_csv << " -> " << pl_spec.output_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    // parallelism comes from the task pool; keep BLAS single-threaded
    setenv("OPENBLAS_NUM_THREADS", "1", 0);
    try {
        return run(argc, argv);
    } catch (const regperc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_numerical() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
