#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ghzw/canonical.hpp"
#include "ghzw/correspondence.hpp"
#include "ghzw/error.hpp"
#include "ghzw/ghz_classifier.hpp"
#include "ghzw/oracle.hpp"
#include "ghzw/partitions.hpp"
#include "ghzw/simplest_form.hpp"
#include "ghzw/state_io.hpp"
#include "ghzw/w_classifier.hpp"

namespace ghzw::cli {

enum ExitCode : int { ok = 0, domain_failure = 1, parse_failure = 2, resource_failure = 3, usage = 64 };

struct RunConfig {
    std::string format = "text";
    std::uint64_t seed = 0;
    double tolerance = kDefaultTolerance;
    int max_qubits = kDefaultMaxQubits;
    std::size_t max_n = 10;
    std::size_t max_t = 24;
};

// Text lines and the structured form of one subcommand's result.
struct Report {
    std::vector<std::string> lines;
    nlohmann::json data = nlohmann::json::object();

    void line(std::string s) { lines.push_back(std::move(s)); }
};

namespace detail {

inline std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

inline SymbolicState load_state(const std::string& path) { return parse_state(read_input(path)); }

inline CanonicalLimits limits(const RunConfig& cfg) { return {cfg.max_n, cfg.max_t}; }

inline std::vector<std::string> matrix_rows(const TermMatrix& m) {
    std::vector<std::string> rows;
    for (std::size_t r = 0; r < m.rows.size(); ++r) rows.push_back(m.row_string(r));
    return rows;
}

inline nlohmann::json blocks_json(const std::vector<ColumnBlock>& blocks) {
    auto out = nlohmann::json::array();
    for (const auto& b : blocks) out.push_back({{"p", b.p}, {"q", b.q}, {"count", b.count}});
    return out;
}

inline std::string join(const std::vector<std::size_t>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

inline std::string w_layer_rows_text(const TermMatrix& m, std::size_t r) {
    std::string s = m.row_string(r);
    for (auto& ch : s) ch = ch == '1' ? 'W' : '0';
    return s;
}

}  // namespace detail

inline Report cmd_check(const RunConfig&, const std::string& path) {
    const auto state = detail::load_state(path);
    const auto verdict = is_fully_entangled(state);
    Report r;
    r.line(std::string("fully-entangled: ") + (verdict.fully_entangled ? "true" : "false"));
    r.line("groups: " + std::to_string(state.group_count()));
    r.line("cuts-checked: " + std::to_string(verdict.cuts_checked));
    r.data["fully_entangled"] = verdict.fully_entangled;
    r.data["groups"] = state.group_count();
    r.data["cuts_checked"] = verdict.cuts_checked;
    r.data["witness"] = nullptr;
    if (verdict.witness) {
        r.line("witness: {" + detail::join(*verdict.witness, ",") + "}");
        r.data["witness"] = *verdict.witness;
    }
    return r;
}

inline Report cmd_simplify(const RunConfig&, const std::string& path) {
    const auto report = simplify(detail::load_state(path));
    Report r;
    auto steps = nlohmann::json::array();
    for (const auto& s : report.steps) {
        std::string text = std::string("merge ") + std::to_string(s.i) + " " + std::to_string(s.j) + " " +
                           to_string(s.criterion);
        nlohmann::json js{{"i", s.i}, {"j", s.j}, {"criterion", to_string(s.criterion)}, {"complemented", s.complemented}};
        js["k"] = nullptr;
        if (s.k) {
            text += " k=" + s.k->to_string();
            js["k"] = s.k->to_string();
        }
        if (s.complemented) text += " complemented";
        r.line(text);
        steps.push_back(std::move(js));
    }
    r.line("simplest: " + std::to_string(report.final_state.group_count()) + " groups");
    std::istringstream state_text(serialize_state(report.final_state));
    for (std::string l; std::getline(state_text, l);) r.line(l);
    r.data["steps"] = std::move(steps);
    r.data["state"] = state_to_json(report.final_state);
    r.data["qubit_map"] = report.qubit_map;
    return r;
}

inline Report cmd_canon(const RunConfig& cfg, const std::string& path, bool w_mode, bool respect_sizes) {
    const auto state = detail::load_state(path);
    Report r;
    if (!w_mode) {
        const auto form = canonicalize_ghz(support_matrix(normalize_terms(state)), respect_sizes, detail::limits(cfg));
        const auto blocks = decompose_blocks(form.matrix);
        for (const auto& row : detail::matrix_rows(form.matrix)) r.line(row);
        if (respect_sizes) {
            std::string s = "sizes:";
            for (int v : form.matrix.sizes) s += " " + std::to_string(v);
            r.line(s);
        }
        r.line(blocks_to_string(blocks));
        r.data["basis"] = "GHZ";
        r.data["rows"] = detail::matrix_rows(form.matrix);
        r.data["blocks"] = detail::blocks_json(blocks);
        r.data["sizes"] = respect_sizes ? nlohmann::json(form.matrix.sizes) : nlohmann::json(nullptr);
    } else {
        const auto layer = highest_layer(state);
        const auto form = canonicalize_w_layer(layer.layer, respect_sizes, detail::limits(cfg));
        r.line("W-main(p=" + std::to_string(layer.p) + ",q=" + std::to_string(layer.q) + ")");
        for (std::size_t i = 0; i < form.matrix.rows.size(); ++i) r.line(detail::w_layer_rows_text(form.matrix, i));
        r.data["basis"] = "W";
        r.data["p"] = layer.p;
        r.data["q"] = layer.q;
        r.data["rows"] = detail::matrix_rows(form.matrix);
        r.data["sizes"] = respect_sizes ? nlohmann::json(form.matrix.sizes) : nlohmann::json(nullptr);
    }
    return r;
}

inline Report cmd_enum_partitions(const RunConfig&, int n, bool ghz_only, bool w_only, bool multi_group) {
    SkeletonOptions opts;
    opts.ghz_only = ghz_only;
    opts.w_only = w_only;
    opts.allow_single_group = !multi_group;
    Report r;
    auto list = nlohmann::json::array();
    for (const auto& s : enumerate_skeletons(n, opts)) {
        r.line(s.to_string());
        list.push_back({{"ghz", s.ghz}, {"w", s.w}});
    }
    r.data["n"] = n;
    r.data["skeletons"] = std::move(list);
    if (!ghz_only && !w_only && !multi_group && n >= 4) r.data["count_main_partitions"] = count_main_partitions(n).str();
    return r;
}

inline Report cmd_enum_ghz(const RunConfig& cfg, int p, int q, int n) {
    EnumerationLimits lim;
    lim.canonical = detail::limits(cfg);
    const auto classes = enumerate_ghz_classes(p, q, n, lim);
    Report r;
    auto list = nlohmann::json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        const auto blocks = decompose_blocks(c.form.matrix);
        r.line("class " + std::to_string(i) + ": " + c.partition_string());
        for (const auto& row : detail::matrix_rows(c.form.matrix)) r.line(row);
        r.line(blocks_to_string(blocks));
        list.push_back({{"rows", detail::matrix_rows(c.form.matrix)},
                        {"partition", c.partition_string()},
                        {"blocks", detail::blocks_json(blocks)}});
    }
    r.line("classes: " + std::to_string(classes.size()));
    r.data["p"] = p;
    r.data["q"] = q;
    r.data["n"] = n;
    r.data["q_inf"] = p >= 1 ? nlohmann::json(q_inf(p, n)) : nlohmann::json(nullptr);
    r.data["classes"] = std::move(list);
    return r;
}

inline Report cmd_enum_w(const RunConfig& cfg, int n, int q, int p) {
    const auto layers = enumerate_w_layers(n, q, p, detail::limits(cfg));
    Report r;
    auto list = nlohmann::json::array();
    for (std::size_t i = 0; i < layers.size(); ++i) {
        r.line("layer " + std::to_string(i) + ": W-main(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")");
        for (std::size_t k = 0; k < layers[i].matrix.rows.size(); ++k)
            r.line(detail::w_layer_rows_text(layers[i].matrix, k));
        list.push_back({{"rows", detail::matrix_rows(layers[i].matrix)}});
    }
    r.line("layers: " + std::to_string(layers.size()));
    r.data["n"] = n;
    r.data["q"] = q;
    r.data["p"] = p;
    r.data["layers"] = std::move(list);
    if (n >= 2) r.data["w_main_classes"] = count_w_main_classes(n).str();
    return r;
}

inline Report cmd_compose(const RunConfig&, const std::string& ghz_path, const std::string& w_path) {
    const auto composed = compose(detail::load_state(ghz_path), detail::load_state(w_path));
    Report r;
    std::string header = "groups:";
    for (const auto& g : composed.state.groups()) header += std::string(" ") + to_char(g.kind) + ":" + std::to_string(g.size);
    r.line(header);
    auto terms = nlohmann::json::array();
    for (std::size_t i = 0; i < composed.state.term_count(); ++i) {
        const auto& t = composed.state.terms()[i];
        std::string l = "term: " + composed.slots[i];
        for (auto s : t.symbols) l += std::string(" ") + to_char(s);
        r.line(l);
        terms.push_back({{"slot", composed.slots[i]}, {"symbols", symbols_to_string(t.symbols)}});
    }
    auto groups = nlohmann::json::array();
    for (const auto& g : composed.state.groups()) groups.push_back({{"kind", std::string(1, to_char(g.kind))}, {"size", g.size}});
    r.data["groups"] = std::move(groups);
    r.data["terms"] = std::move(terms);
    return r;
}

inline Report cmd_classify(const RunConfig& cfg, const std::string& path) {
    const auto input = detail::load_state(path);
    const auto simple = simplify(input).final_state;
    const bool entangled = is_fully_entangled(simple).fully_entangled;
    Report r;
    r.line(std::string("fully-entangled: ") + (entangled ? "true" : "false"));
    r.line("simplest-groups: " + std::to_string(simple.group_count()));
    r.data["fully_entangled"] = entangled;
    r.data["simplest_groups"] = simple.group_count();
    if (simple.all_kind(BasisKind::ghz)) {
        const auto form = canonicalize_ghz(support_matrix(simple), true, detail::limits(cfg));
        std::vector<int> sums;
        for (auto row : form.matrix.rows)
            if (row != 0) sums.push_back(__builtin_popcount(row));
        std::sort(sums.rbegin(), sums.rend());
        const std::string partition = GhzClass{form, sums}.partition_string();
        const auto blocks = decompose_blocks(form.matrix);
        r.line("label: GHZ " + partition);
        for (const auto& row : detail::matrix_rows(form.matrix)) r.line(row);
        r.line(blocks_to_string(blocks));
        r.data["family"] = "GHZ";
        r.data["label"] = partition;
        r.data["rows"] = detail::matrix_rows(form.matrix);
        r.data["blocks"] = detail::blocks_json(blocks);
    } else if (simple.all_kind(BasisKind::w)) {
        const auto layer = highest_layer(simple);
        const auto form = canonicalize_w_layer(layer.layer, true, detail::limits(cfg));
        const std::string label = "W-main(p=" + std::to_string(layer.p) + ",q=" + std::to_string(layer.q) + ")";
        r.line("label: " + label);
        for (std::size_t i = 0; i < form.matrix.rows.size(); ++i) r.line(detail::w_layer_rows_text(form.matrix, i));
        r.data["family"] = "W";
        r.data["label"] = label;
        r.data["rows"] = detail::matrix_rows(form.matrix);
    } else {
        const auto label = classify_mixed_main(simple);
        r.line("label: " + label.to_string());
        r.line("highest-w: " + std::to_string(label.q));
        if (label.zero_bracket) r.line("zero-bracket: " + std::to_string(*label.zero_bracket));
        r.data["family"] = "mixed";
        r.data["label"] = label.to_string();
        r.data["counts"] = label.counts;
        r.data["q"] = label.q;
        r.data["zero_bracket"] = label.zero_bracket ? nlohmann::json(*label.zero_bracket) : nlohmann::json(nullptr);
    }
    return r;
}

// Dense cross-checks of the symbolic verdicts. Any failed check makes the
// command fail with a domain exit code after the report is written.
inline Report cmd_oracle_verify(const RunConfig& cfg, const std::string& path, bool& passed) {
    const auto state = detail::load_state(path);
    const auto dense = expand(state, cfg.max_qubits);
    const auto fp = rank_fingerprint(dense, cfg.tolerance);
    const bool exact = is_fully_entangled(state).fully_entangled;
    const bool numeric = dense_fully_entangled(dense, cfg.tolerance);
    const auto cls = theorem1_classify(dense, cfg.tolerance);

    std::vector<int> spans;
    for (const auto& g : state.groups()) spans.push_back(g.size);
    const auto moved = apply_random_ilo(dense, cfg.seed, IloKind::general, spans);
    const bool fp_invariant = rank_fingerprint(moved, cfg.tolerance) == fp;

    const auto merged = simplify(state);
    const auto merged_dense = expand(merged.final_state, cfg.max_qubits);
    std::vector<int> order(static_cast<std::size_t>(merged_dense.qubits));
    int f = 0;
    for (const auto& group : merged.qubit_map)
        for (int q : group) order[static_cast<std::size_t>(q)] = f++;
    const bool simplify_ok = rank_fingerprint(permute_qubits(merged_dense, order), cfg.tolerance) == fp;

    Report r;
    r.line("qubits: " + std::to_string(dense.qubits));
    std::string fps = "fingerprint:";
    auto fpj = nlohmann::json::array();
    for (const auto& [subset, rank] : fp) {
        fps += " " + std::to_string(subset) + ":" + std::to_string(rank);
        fpj.push_back({{"subset", subset}, {"rank", rank}});
    }
    r.line(fps);
    r.line(std::string("theorem1: ") + to_string(cls));
    auto check = [&](const char* name, bool ok) {
        r.line(std::string("check ") + name + ": " + (ok ? "pass" : "fail"));
        r.data["checks"].push_back({{"name", name}, {"pass", ok}});
    };
    r.data["checks"] = nlohmann::json::array();
    check("exact-vs-dense", exact == numeric);
    check("fingerprint-ilo-invariance", fp_invariant);
    check("simplify-preserves-fingerprint", simplify_ok);
    passed = exact == numeric && fp_invariant && simplify_ok;
    r.line(std::string("verdict: ") + (passed ? "pass" : "fail"));
    r.data["qubits"] = dense.qubits;
    r.data["fingerprint"] = std::move(fpj);
    r.data["theorem1"] = to_string(cls);
    r.data["fully_entangled"] = exact;
    r.data["seed"] = cfg.seed;
    r.data["tolerance"] = cfg.tolerance;
    r.data["verdict"] = passed ? "pass" : "fail";
    return r;
}

namespace detail {

inline void emit(std::ostream& out, const RunConfig& cfg, const std::string& command, Report& r) {
    if (cfg.format == "json") {
        nlohmann::json doc = std::move(r.data);
        doc["command"] = command;
        doc["ok"] = true;
        out << doc.dump(2) << "\n";
    } else {
        for (const auto& l : r.lines) out << l << "\n";
    }
}

inline int fail(std::ostream& out, std::ostream& err, const RunConfig& cfg, const std::string& command,
                const char* kind, const std::string& message, int code) {
    if (cfg.format == "json") {
        nlohmann::json doc{{"command", command}, {"ok", false}, {"error", {{"kind", kind}, {"message", message}}}};
        out << doc.dump(2) << "\n";
    }
    err << "error (" << kind << "): " << message << "\n";
    return code;
}

}  // namespace detail

// Parses argv, runs one subcommand and writes its report. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    if (const char* env = std::getenv("GHZW_MAX_QUBITS")) {
        try {
            cfg.max_qubits = std::stoi(env);
        } catch (const std::exception&) {
            err << "error (usage): GHZW_MAX_QUBITS must be an integer\n";
            return usage;
        }
    }

    CLI::App app{"Classify GHZ-W-type multiqubit entangled states", "ghzw"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "Seed for every random choice");
    app.add_option("--max-qubits", cfg.max_qubits, "Dense expansion cap");
    app.add_option("--max-n", cfg.max_n, "Column cap for canonical forms");

    std::string path;
    std::string path2;

    auto* check = app.add_subcommand("check", "Exact full-entanglement test");
    check->add_option("state", path, "State file, or - for stdin")->required();

    auto* simp = app.add_subcommand("simplify", "Merge groups into simplest form");
    simp->add_option("state", path, "State file, or - for stdin")->required();

    bool canon_ghz = false;
    bool canon_w = false;
    bool respect_sizes = false;
    auto* canon = app.add_subcommand("canon", "Canonical form of a GHZ support or W highest layer");
    auto* ghz_flag = canon->add_flag("--ghz", canon_ghz, "GHZ support matrix");
    canon->add_flag("--w", canon_w, "W highest layer")->excludes(ghz_flag);
    canon->add_flag("--respect-sizes", respect_sizes, "Permute only columns of equal group size");
    canon->add_option("state", path, "State file, or - for stdin")->required();

    int parts_n = 0;
    bool ghz_only = false;
    bool w_only = false;
    bool multi_group = false;
    auto* parts = app.add_subcommand("enum-partitions", "Partition skeletons of N qubits");
    parts->add_option("N", parts_n, "Qubit count")->required();
    auto* go = parts->add_flag("--ghz-only", ghz_only, "GHZ groups only");
    parts->add_flag("--w-only", w_only, "W groups only")->excludes(go);
    parts->add_flag("--multi-group", multi_group, "At least two groups");

    int p = 0;
    int q = 0;
    int n = 0;
    auto* eghz = app.add_subcommand("enum-ghz", "GHZ classes with n weight-p columns over p+q rows");
    eghz->add_option("--p", p, "Ones per column")->required();
    eghz->add_option("--q", q, "Zeros per column")->required();
    eghz->add_option("--n", n, "Columns")->required();
    eghz->add_option("--max-t", cfg.max_t, "Row cap");

    auto* ew = app.add_subcommand("enum-w", "Highest-layer W classes");
    ew->add_option("--n", n, "Groups")->required();
    ew->add_option("--q", q, "W symbols per highest term")->required();
    ew->add_option("--p", p, "Highest terms")->required();

    auto* comp = app.add_subcommand("compose", "Direct sum of a GHZ part and a W part");
    comp->add_option("ghz", path, "GHZ part")->required();
    comp->add_option("w", path2, "W part")->required();

    auto* cls = app.add_subcommand("classify", "Simplest form and class label");
    cls->add_option("state", path, "State file, or - for stdin")->required();

    auto* oracle = app.add_subcommand("oracle", "Dense numeric cross-checks");
    oracle->require_subcommand(1);
    auto* verify = oracle->add_subcommand("verify", "Fingerprint, classification and cross-checks");
    verify->add_option("state", path, "State file, or - for stdin")->required();
    verify->add_option("--seed", cfg.seed, "Seed for the random ILO");
    verify->add_option("--tol", cfg.tolerance, "Relative singular value tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return usage;
    }
    if (canon->parsed() && !canon_ghz && !canon_w) {
        err << "usage error: canon needs --ghz or --w\n" << canon->help();
        return usage;
    }

    std::string command;
    try {
        Report r;
        int code = ok;
        if (check->parsed()) {
            command = "check";
            r = cmd_check(cfg, path);
        } else if (simp->parsed()) {
            command = "simplify";
            r = cmd_simplify(cfg, path);
        } else if (canon->parsed()) {
            command = "canon";
            r = cmd_canon(cfg, path, canon_w, respect_sizes);
        } else if (parts->parsed()) {
            command = "enum-partitions";
            r = cmd_enum_partitions(cfg, parts_n, ghz_only, w_only, multi_group);
        } else if (eghz->parsed()) {
            command = "enum-ghz";
            r = cmd_enum_ghz(cfg, p, q, n);
        } else if (ew->parsed()) {
            command = "enum-w";
            r = cmd_enum_w(cfg, n, q, p);
        } else if (comp->parsed()) {
            command = "compose";
            r = cmd_compose(cfg, path, path2);
        } else if (cls->parsed()) {
            command = "classify";
            r = cmd_classify(cfg, path);
        } else {
            command = "oracle verify";
            bool passed = false;
            r = cmd_oracle_verify(cfg, path, passed);
            if (!passed) code = domain_failure;
        }
        detail::emit(out, cfg, command, r);
        return code;
    } catch (const ParseError& e) {
        return detail::fail(out, err, cfg, command, "parse", e.what(), parse_failure);
    } catch (const ResourceError& e) {
        return detail::fail(out, err, cfg, command, "resource", e.what(), resource_failure);
    } catch (const DomainError& e) {
        return detail::fail(out, err, cfg, command, "domain", e.what(), domain_failure);
    } catch (const ContractError& e) {
        return detail::fail(out, err, cfg, command, "contract", e.what(), domain_failure);
    } catch (const Error& e) {
        return detail::fail(out, err, cfg, command, "internal", e.what(), domain_failure);
    }
}

}  // namespace ghzw::cli
