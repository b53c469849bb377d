#include "cli.hpp"

#include "surfstokes/error_metrics.hpp"
#include "surfstokes/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace surfstokes::cli {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

// Shortest text that parses back to the same double.
std::string format_double(double v)
{
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

double parse_double(const std::string& key, const std::string& v)
{
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (v.empty() || used != v.size() || !std::isfinite(out)) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a number");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& v)
{
    std::size_t used = 0;
    int out = 0;
    try {
        out = std::stoi(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (v.empty() || used != v.size()) {
        throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1") {
        return true;
    }
    if (v == "false" || v == "0") {
        return false;
    }
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

template <class T>
std::string join(const std::vector<T>& v, const std::function<std::string(const T&)>& f)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + f(v[i]);
    }
    return out;
}

struct KeyHandler {
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

const std::map<std::string, KeyHandler>& handlers()
{
    static const std::map<std::string, KeyHandler> h = {
        {"surface.shape",
         {[](RunConfig& c, const std::string& v) {
              if (v != "sphere" && v != "biconcave") {
                  throw ConfigError("surface.shape must be sphere or biconcave, got '" + v + "'");
              }
              c.shape = v;
          },
          [](const RunConfig& c) { return c.shape; }}},
        {"surface.radius",
         {[](RunConfig& c, const std::string& v) { c.radius = parse_double("surface.radius", v); },
          [](const RunConfig& c) { return format_double(c.radius); }}},
        {"surface.c",
         {[](RunConfig& c, const std::string& v) { c.c = parse_double("surface.c", v); },
          [](const RunConfig& c) { return format_double(c.c); }}},
        {"surface.d",
         {[](RunConfig& c, const std::string& v) { c.d = parse_d(v, c.c); },
          [](const RunConfig& c) { return format_double(c.d); }}},
        {"mesh.base_level",
         {[](RunConfig& c, const std::string& v) { c.base_level = parse_int("mesh.base_level", v); },
          [](const RunConfig& c) { return std::to_string(c.base_level); }}},
        {"mesh.smooth",
         {[](RunConfig& c, const std::string& v) { c.smooth = parse_bool("mesh.smooth", v); },
          [](const RunConfig& c) { return std::string(c.smooth ? "true" : "false"); }}},
        {"quadrature.degree",
         {[](RunConfig& c, const std::string& v) {
              c.quadrature_degree =
                  v.empty() ? std::nullopt : std::optional<int>(parse_int("quadrature.degree", v));
          },
          [](const RunConfig& c) {
              return c.quadrature_degree ? std::to_string(*c.quadrature_degree) : std::string();
          }}},
        {"penalty.eta_override",
         {[](RunConfig& c, const std::string& v) {
              c.eta_override =
                  v.empty() ? std::nullopt : std::optional<double>(parse_double("penalty.eta_override", v));
          },
          [](const RunConfig& c) { return c.eta_override ? format_double(*c.eta_override) : std::string(); }}},
        {"solver.kind",
         {[](RunConfig& c, const std::string& v) {
              if (v != "direct" && v != "minres") {
                  throw ConfigError("solver.kind must be direct or minres, got '" + v + "'");
              }
              c.solver_kind = v;
          },
          [](const RunConfig& c) { return c.solver_kind; }}},
        {"solver.tol",
         {[](RunConfig& c, const std::string& v) { c.solver_tol = parse_double("solver.tol", v); },
          [](const RunConfig& c) { return format_double(c.solver_tol); }}},
        {"run.levels",
         {[](RunConfig& c, const std::string& v) { c.levels = parse_int_list(v); },
          [](const RunConfig& c) {
              return join<int>(c.levels, [](const int& i) { return std::to_string(i); });
          }}},
        {"run.orders",
         {[](RunConfig& c, const std::string& v) { c.orders = parse_int_list(v); },
          [](const RunConfig& c) {
              return join<int>(c.orders, [](const int& i) { return std::to_string(i); });
          }}},
        {"run.formulations",
         {[](RunConfig& c, const std::string& v) {
              std::vector<std::string> f = split(v, ',');
              if (f.empty()) {
                  throw ConfigError("run.formulations must not be empty");
              }
              for (const auto& s : f) {
                  (void)parse_stokes_formulation(s);
              }
              c.formulations = f;
          },
          [](const RunConfig& c) {
              return join<std::string>(c.formulations, [](const std::string& s) { return s; });
          }}},
        {"output.dir",
         {[](RunConfig& c, const std::string& v) { c.output_dir = v.empty() ? "." : v; },
          [](const RunConfig& c) { return c.output_dir; }}},
        {"output.file",
         {[](RunConfig& c, const std::string& v) { c.output_file = v; },
          [](const RunConfig& c) { return c.output_file; }}},
    };
    return h;
}

} // namespace

LevelSetField RunConfig::field() const
{
    return shape == "sphere" ? LevelSetField::sphere(radius) : LevelSetField::biconcave(c, d);
}

StokesOptions RunConfig::stokes_options() const
{
    StokesOptions o;
    o.quadrature_degree = quadrature_degree;
    o.eta_override = eta_override;
    o.solver.kind = solver_kind == "minres" ? SolverKind::minres : SolverKind::direct;
    o.solver.tol = solver_tol;
    return o;
}

const std::vector<std::string>& config_keys()
{
    // surface.c precedes surface.d so that "d0" resolves against the final c.
    static const std::vector<std::string> keys = {
        "surface.shape", "surface.radius",       "surface.c",   "surface.d",  "mesh.base_level",
        "mesh.smooth",   "quadrature.degree",    "penalty.eta_override",      "solver.kind",
        "solver.tol",    "run.levels",           "run.orders",  "run.formulations",
        "output.dir",    "output.file"};
    return keys;
}

std::vector<int> parse_int_list(const std::string& text)
{
    const std::string t = trim(text);
    std::vector<int> out;
    const auto dots = t.find("..");
    if (dots != std::string::npos) {
        const int a = parse_int("range", trim(t.substr(0, dots)));
        const int b = parse_int("range", trim(t.substr(dots + 2)));
        if (b < a) {
            throw ConfigError("empty range '" + t + "'");
        }
        for (int i = a; i <= b; ++i) {
            out.push_back(i);
        }
        return out;
    }
    for (const auto& s : split(t, ',')) {
        out.push_back(parse_int("list", s));
    }
    if (out.empty()) {
        throw ConfigError("empty integer list");
    }
    return out;
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value)
{
    const auto it = handlers().find(key);
    if (it == handlers().end()) {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
    it->second.set(cfg, trim(value));
}

RunConfig parse_config(const std::string& text, RunConfig base)
{
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    // Collect first, then apply in canonical key order so dependent keys
    // (surface.d = d0 after surface.c) do not depend on line order.
    std::map<std::string, std::pair<std::string, int>> seen;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (handlers().count(key) == 0) {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown configuration key '" + key + "'");
        }
        seen[key] = {trim(line.substr(eq + 1)), lineno};
    }
    for (const auto& key : config_keys()) {
        const auto it = seen.find(key);
        if (it == seen.end()) {
            continue;
        }
        try {
            set_config_value(base, key, it->second.first);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(it->second.second) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read configuration file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::string dump_config(const RunConfig& cfg)
{
    std::string out;
    for (const auto& key : config_keys()) {
        const std::string v = handlers().at(key).get(cfg);
        out += key + (v.empty() ? " =" : " = " + v) + "\n";
    }
    return out;
}

std::string field_dump(const VectorSpace& velocity_space, const VecX& u, const ScalarSpace& pressure_space,
                       const VecX& p)
{
    const ScalarSpace& s = velocity_space.scalar();
    std::string out = "# x y z ux uy uz p\n";
    char buf[256];
    for (int i = 0; i < s.dim(); ++i) {
        const auto [t, local] = s.dofmap().owners()[static_cast<std::size_t>(i)];
        const Vec2 xi = s.basis().nodes()[static_cast<std::size_t>(local)];
        const double pv = pressure_space.evaluate(p, static_cast<std::size_t>(t), xi).first;
        const Vec3& x = s.node_points()[static_cast<std::size_t>(i)];
        std::snprintf(buf, sizeof buf, "%.12e %.12e %.12e %.12e %.12e %.12e %.12e\n", x[0], x[1], x[2],
                      u[VectorSpace::index(i, 0)], u[VectorSpace::index(i, 1)], u[VectorSpace::index(i, 2)], pv);
        out += buf;
    }
    return out;
}

namespace {

// Writes through a temporary file so readers never see partial output.
void write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw ConfigError("cannot write '" + path.string() + "'");
        }
        out << text;
    }
    fs::rename(tmp, path);
}

int single(const std::vector<int>& v, const char* what)
{
    if (v.size() != 1) {
        throw ConfigError(std::string("this command takes a single ") + what);
    }
    return v.front();
}

std::shared_ptr<const CurvedSurface> make_surface(const RunConfig& cfg, int level, int k)
{
    const LevelSetField field = cfg.field();
    return std::make_shared<const CurvedSurface>(mesh_hierarchy_level(field, cfg.base_level, level, cfg.smooth),
                                                 field, k);
}

struct ManufacturedRun {
    ErrorRecord record;
    std::string dump;
    double residual = 0.0;
};

ManufacturedRun run_manufactured(const RunConfig& cfg, StokesFormulation form, int k, int level, bool want_dump)
{
    const ManufacturedCase mc(cfg.field());
    const VectorField f = [&mc](const Vec3& x) { return mc.forcing_f(x); };
    const auto surface = make_surface(cfg, level, k);
    const ExactFields exact = exact_fields(mc);
    ManufacturedRun r;
    if (form == StokesFormulation::th) {
        const auto s = solve_taylor_hood(surface, f, cfg.stokes_options());
        r.record = compute_errors(discrete_fields(s), exact, cfg.quadrature_degree);
        r.residual = s.diagnostics.relative_residual;
        if (want_dump) {
            r.dump = field_dump(s.velocity_space, s.u, s.pressure_space, s.p);
        }
    } else {
        const auto s = solve_stream_function(surface, f, cfg.stokes_options());
        r.record = compute_errors(discrete_fields(s), exact, cfg.quadrature_degree);
        r.residual = std::max({s.diagnostics.relative_residual, s.velocity_diagnostics.relative_residual,
                               s.pressure_diagnostics.relative_residual});
        if (want_dump) {
            r.dump = field_dump(s.velocity_space, s.u, s.pressure_space, s.p);
        }
    }
    return r;
}

std::string describe_case(const RunConfig& cfg, const std::string& form, int k, int level)
{
    return "# " + cfg.field().describe() + ", formulation " + form + ", order " + std::to_string(k) + ", level " +
           std::to_string(level) + "\n";
}

int cmd_mesh(const RunConfig& cfg, std::ostream& out)
{
    const int level = single(cfg.levels, "level");
    const LinearSurfaceMesh m = mesh_hierarchy_level(cfg.field(), cfg.base_level, level, cfg.smooth);
    const MeshStats s = stats(m);
    char buf[256];
    std::snprintf(buf, sizeof buf, "V %zu E %zu F %zu h_max %.6e h_avg %.6e min_angle %.3f\n", s.V, s.E, s.F,
                  s.h_max, s.h_avg, s.min_angle);
    out << buf;
    if (!cfg.output_file.empty()) {
        write_file(cfg.output_file, to_off(m));
    }
    return kExitOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out)
{
    const int level = single(cfg.levels, "level");
    const int k = single(cfg.orders, "order");
    if (cfg.formulations.size() != 1) {
        throw ConfigError("solve takes a single formulation");
    }
    const std::string& form = cfg.formulations.front();
    const ManufacturedRun r = run_manufactured(cfg, parse_stokes_formulation(form), k, level, true);
    out << csv_header() << "\n" << csv_row(r.record) << "\n";
    char buf[128];
    std::snprintf(buf, sizeof buf, "relative residual %.3e\n", r.residual);
    out << buf;
    const fs::path path = cfg.output_file.empty()
                              ? fs::path(cfg.output_dir) / ("field_" + form + "_k" + std::to_string(k) + "_l" +
                                                            std::to_string(level) + ".txt")
                              : fs::path(cfg.output_file);
    write_file(path, describe_case(cfg, form, k, level) + r.dump);
    return kExitOk;
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out)
{
    std::string summary = "formulation,k,norm,regression,per_interval\n";
    for (const auto& form : cfg.formulations) {
        const StokesFormulation f = parse_stokes_formulation(form);
        for (int k : cfg.orders) {
            std::vector<ErrorRecord> records;
            for (int level : cfg.levels) {
                records.push_back(run_manufactured(cfg, f, k, level, false).record);
            }
            const std::string name = "convergence_" + form + "_k" + std::to_string(k) + ".csv";
            write_file(fs::path(cfg.output_dir) / name, to_csv(records));
            out << "wrote " << name << "\n";
            if (records.size() < 2) {
                continue;
            }
            const auto orders = eoc(records);
            for (std::size_t n = 0; n < kNormNames.size(); ++n) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.4f", orders[n].regression);
                std::string line = form + "," + std::to_string(k) + "," + kNormNames[n] + "," + buf + ",";
                for (std::size_t i = 0; i < orders[n].per_interval.size(); ++i) {
                    std::snprintf(buf, sizeof buf, "%s%.4f", i ? " " : "", orders[n].per_interval[i]);
                    line += buf;
                }
                summary += line + "\n";
                out << line << "\n";
            }
        }
    }
    write_file(fs::path(cfg.output_dir) / "eoc_summary.csv", summary);
    return kExitOk;
}

int cmd_benchmark(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.shape != "biconcave") {
        throw ConfigError("the benchmark runs on the biconcave shape");
    }
    BenchmarkConfig b;
    b.c = cfg.c;
    b.d = cfg.d;
    b.level = single(cfg.levels, "level");
    b.k = single(cfg.orders, "order");
    b.base_level = cfg.base_level;
    b.smooth = cfg.smooth;
    b.options = cfg.stokes_options();
    std::string csv = benchmark_csv_header() + "\n";
    for (const auto& form : cfg.formulations) {
        b.formulation = parse_stokes_formulation(form);
        const VortexResult r = run_benchmark(b);
        csv += benchmark_csv_row(b, r) + "\n";
    }
    out << csv;
    if (!cfg.output_file.empty()) {
        write_file(cfg.output_file, csv);
    }
    return kExitOk;
}

struct DofsArgs {
    bool exact = false;
    long long faces = 0;
    std::string method = "sfem";
};

int cmd_dofs(const RunConfig& cfg, const DofsArgs& a, std::ostream& out)
{
    const int k = single(cfg.orders, "order");
    if (a.faces <= 0) {
        throw ConfigError("dofs needs --faces");
    }
    if (a.exact) {
        out << "TH " << exact_counts(a.faces, k, Formulation::th) << ", SF "
            << exact_counts(a.faces, k, Formulation::sf) << "\n";
        return kExitOk;
    }
    const Method m = parse_method(a.method);
    out << "TH " << dofs_formula(m, Formulation::th, a.faces, k) << ", SF "
        << dofs_formula(m, Formulation::sf, a.faces, k) << ", SF_total "
        << dofs_formula(m, Formulation::sf_total, a.faces, k) << "\n";
    return kExitOk;
}

/// Flags shared by every command; each one maps onto a configuration key.
struct CommonFlags {
    std::string config_path;
    std::string dump_path;
    std::vector<std::pair<std::string, std::string>> values; // (key, text) in flag order
    std::map<std::string, std::string> text;
    std::map<std::string, CLI::Option*> options;
};

void add_common(CLI::App* app, CommonFlags& f, const std::vector<std::pair<std::string, std::string>>& flags)
{
    app->add_option("--config", f.config_path, "key = value configuration file");
    app->add_option("--dump-config", f.dump_path, "write the effective configuration to this file");
    for (const auto& [flag, key] : flags) {
        f.options[key] = app->add_option(flag, f.text[key], "sets " + key);
    }
}

RunConfig resolve(const CommonFlags& f)
{
    RunConfig cfg;
    if (!f.config_path.empty()) {
        cfg = load_config(f.config_path, cfg);
    }
    // Flags override file values; apply them in canonical key order.
    for (const auto& key : config_keys()) {
        const auto it = f.options.find(key);
        if (it != f.options.end() && it->second->count() > 0) {
            set_config_value(cfg, key, f.text.at(key));
        }
    }
    if (!f.dump_path.empty()) {
        write_file(f.dump_path, dump_config(cfg));
    }
    return cfg;
}

const std::vector<std::pair<std::string, std::string>> kSurfaceFlags = {
    {"--shape", "surface.shape"},       {"--radius", "surface.radius"}, {"--c", "surface.c"},
    {"--d", "surface.d"},               {"--base-level", "mesh.base_level"},
    {"--smooth", "mesh.smooth"}};

const std::vector<std::pair<std::string, std::string>> kSolverFlags = {
    {"--quadrature-degree", "quadrature.degree"},
    {"--eta", "penalty.eta_override"},
    {"--solver", "solver.kind"},
    {"--tol", "solver.tol"}};

std::vector<std::pair<std::string, std::string>> concat(std::vector<std::pair<std::string, std::string>> a,
                                                        const std::vector<std::pair<std::string, std::string>>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app("Surface Stokes solvers on isoparametric surface meshes", "surfstokes");
    app.require_subcommand(1);

    CommonFlags mesh_f;
    CommonFlags solve_f;
    CommonFlags conv_f;
    CommonFlags bench_f;
    CommonFlags dofs_f;
    DofsArgs dofs_a;

    CLI::App* mesh = app.add_subcommand("mesh", "generate a surface mesh and optionally write it as OFF");
    add_common(mesh, mesh_f,
               concat(kSurfaceFlags, {{"--level", "run.levels"}, {"--out", "output.file"}}));

    CLI::App* solve = app.add_subcommand("solve", "solve the manufactured problem once and dump the fields");
    add_common(solve, solve_f,
               concat(concat(kSurfaceFlags, kSolverFlags),
                      {{"--formulation", "run.formulations"},
                       {"--order", "run.orders"},
                       {"--level", "run.levels"},
                       {"--out-dir", "output.dir"},
                       {"--out", "output.file"}}));

    CLI::App* conv = app.add_subcommand("convergence", "error norms and orders over a level sweep");
    add_common(conv, conv_f,
               concat(concat(kSurfaceFlags, kSolverFlags),
                      {{"--formulation", "run.formulations"},
                       {"--order", "run.orders"},
                       {"--levels", "run.levels"},
                       {"--out-dir", "output.dir"}}));

    CLI::App* bench = app.add_subcommand("benchmark", "vortex location under the rotating ring forcing");
    add_common(bench, bench_f,
               concat(concat(kSurfaceFlags, kSolverFlags),
                      {{"--formulation", "run.formulations"},
                       {"--order", "run.orders"},
                       {"--level", "run.levels"},
                       {"--out", "output.file"}}));

    CLI::App* dofs = app.add_subcommand("dofs", "degree-of-freedom counts");
    add_common(dofs, dofs_f, {{"--k", "run.orders"}});
    dofs->add_flag("--exact", dofs_a.exact, "exact counts on a closed genus-0 mesh");
    dofs->add_option("--faces", dofs_a.faces, "number of triangles (or cut cells)");
    dofs->add_option("--method", dofs_a.method, "closed-form method: sfem or tracefem");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        // Every subcommand with every flag, so one --help documents the whole tool.
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (mesh->parsed()) {
            return cmd_mesh(resolve(mesh_f), out);
        }
        if (solve->parsed()) {
            return cmd_solve(resolve(solve_f), out);
        }
        if (conv->parsed()) {
            return cmd_convergence(resolve(conv_f), out);
        }
        if (bench->parsed()) {
            return cmd_benchmark(resolve(bench_f), out);
        }
        return cmd_dofs(resolve(dofs_f), dofs_a, out);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
    } catch (const InvalidOrder& e) {
        err << "invalid order: " << e.what() << "\n";
    } catch (const InvalidMesh& e) {
        err << "invalid mesh: " << e.what() << "\n";
    } catch (const ManifoldError& e) {
        err << "invalid mesh: " << e.what() << "\n";
    } catch (const DegenerateInput& e) {
        err << "invalid input: " << e.what() << "\n";
    } catch (const NotSimplyConnected& e) {
        err << "invalid surface: " << e.what() << "\n";
    } catch (const Error& e) {
        err << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const fs::filesystem_error& e) {
        err << "output error: " << e.what() << "\n";
    }
    return kExitValidation;
}

} // namespace surfstokes::cli
