// Copyright 2026 The DWR Compiler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dwr/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "dwr/circuit.h"
#include "dwr/compile.h"
#include "dwr/graph.h"
#include "dwr/oracle.h"
#include "dwr/tableau.h"

namespace dwr {

namespace {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct CommandConfig {
    std::string scheme = "general";
    size_t w = 0;
    size_t a = 0;
    std::string target;
    std::string graph_path;
    std::string circuit_path;
    std::string output_path;
    std::vector<size_t> physical;
    std::string rebase = "basis";
    std::string format = "text";
    bool dense = false;
    bool reschedule = false;
    size_t samples = 0;
    uint64_t seed = 1;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write " + path);
    }
    out << text;
}

void print_report(const VerificationReport &report, const CommandConfig &cfg, std::ostream &out) {
    out << (cfg.format == "kv" ? report.kv() : report.str());
}

std::string physical_text(const Circuit &c) {
    std::string s;
    for (size_t q : c.physical) {
        s += (s.empty() ? "" : " ") + std::to_string(q);
    }
    return s;
}

PauliString parse_target(const std::string &text, size_t w) {
    PauliString t;
    try {
        t = PauliString::from_text(text);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("bad --target: ") + e.what());
    }
    if (w != 0 && t.num_qubits() != w) {
        throw UsageError(
            "--target has " + std::to_string(t.num_qubits()) + " letters but the circuit has " + std::to_string(w) +
            " physical qubits");
    }
    return t;
}

Circuit compile_scheme(const CommandConfig &cfg, size_t w) {
    const std::string &s = cfg.scheme;
    if (s == "constant-space") {
        return compile_constant_space(w);
    }
    if (s == "depth5") {
        return compile_depth5(w);
    }
    if (s == "depth6") {
        return compile_depth6(w);
    }
    if (s == "interpolating") {
        if (cfg.a == 0) {
            throw UsageError("--scheme interpolating needs --a");
        }
        return compile_interpolating(w, cfg.a);
    }
    throw UsageError("unknown scheme " + s);
}

int cmd_compile(const CommandConfig &cfg, std::ostream &out, std::ostream &err) {
    Circuit c;
    if (cfg.scheme == "general") {
        if (cfg.graph_path.empty()) {
            throw UsageError("--scheme general needs --graph");
        }
        GraphFile gf = parse_graph(read_file(cfg.graph_path));
        std::vector<size_t> physical = cfg.physical.empty() ? gf.physical : cfg.physical;
        if (physical.empty()) {
            throw UsageError("no physical qubits: give --physical or a `physical` line in the graph file");
        }
        try {
            c = compile_general(validate_for_dwr(gf.graph, physical));
        } catch (const GraphError &e) {
            err << "error: " << graph_error_name(e.kind) << ": " << e.what() << "\n";
            return kExitUsage;
        }
    } else {
        size_t w = cfg.w;
        if (w == 0 && !cfg.target.empty()) {
            w = PauliString::from_text(cfg.target).num_qubits();
        }
        if (w == 0) {
            throw UsageError("give --w or --target");
        }
        c = compile_scheme(cfg, w);
    }

    PauliString target;
    if (cfg.target.empty()) {
        target = PauliString(c.physical.size());
        for (size_t k = 0; k < target.num_qubits(); k++) {
            target.set_letter(k, 'Z');
        }
    } else {
        target = parse_target(cfg.target, c.physical.size());
    }
    c = rebase(c, target, cfg.rebase == "rotations" ? RebaseMode::Rotations : RebaseMode::Basis);
    if (cfg.reschedule) {
        c = reschedule_asap(c);
    }

    std::string text = serialize_circuit(c);
    if (cfg.output_path.empty()) {
        out << text;
    } else {
        write_file(cfg.output_path, text);
        out << "wrote " << cfg.output_path << "\n";
    }
    if (cfg.format == "kv") {
        out << "physical=" << physical_text(c) << "\n";
    } else {
        out << "target " << target.str() << " on physical qubits " << physical_text(c) << "\n";
    }
    VerificationReport report = verify_dwr(c, target);
    print_report(report, cfg, out);
    return report.ok ? kExitOk : kExitVerificationFailed;
}

Circuit load_circuit(const CommandConfig &cfg) {
    if (cfg.circuit_path.empty()) {
        throw UsageError("--circuit is required");
    }
    return parse_circuit(read_file(cfg.circuit_path));
}

int cmd_verify(const CommandConfig &cfg, std::ostream &out, std::ostream &err) {
    Circuit c = load_circuit(cfg);
    if (cfg.target.empty()) {
        throw UsageError("--target is required");
    }
    PauliString target = parse_target(cfg.target, 0);
    if (cfg.dense && c.qubit_count > kDenseQubitCap) {
        err << "refusing --dense: circuit has " << c.qubit_count << " qubits, dense cap is " << kDenseQubitCap << "\n";
        return kExitUsage;
    }
    if (cfg.reschedule) {
        c = reschedule_asap(c);
    }
    VerificationReport report = verify_dwr(c, target);
    print_report(report, cfg, out);
    bool ok = report.ok;
    if (cfg.dense) {
        OracleOptions options;
        options.samples = cfg.samples;
        options.seed = cfg.seed;
        OracleReport dense = oracle_verify(c, target, options);
        if (cfg.format == "kv") {
            out << "dense_ok=" << (dense.ok ? 1 : 0) << "\ndense_leaves=" << dense.leaves
                << "\ndense_max_deviation=" << dense.max_deviation << "\n";
            if (!dense.ok) {
                out << "dense_diagnosis=" << dense.diagnosis << "\n";
            }
        } else {
            out << dense.str();
        }
        ok = ok && dense.ok;
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_metrics(const CommandConfig &cfg, std::ostream &out) {
    Circuit c = load_circuit(cfg);
    if (cfg.reschedule) {
        c = reschedule_asap(c);
    }
    Metrics m = metrics(c);
    if (cfg.format == "kv") {
        out << "A=" << m.auxiliary_count << "\nD=" << m.depth << "\nV=" << m.volume << "\nops=" << c.op_count() << "\n";
        for (size_t q = 0; q < m.idle.size(); q++) {
            out << "idle_" << q << "=" << m.idle[q] << "\n";
        }
        return kExitOk;
    }
    out << "A=" << m.auxiliary_count << " D=" << m.depth << " V=" << m.volume << "\n";
    out << "ops: " << c.op_count() << "\n";
    out << "idle layers per qubit:";
    for (size_t q = 0; q < m.idle.size(); q++) {
        out << " " << q << ":" << m.idle[q];
    }
    out << "\n";
    return kExitOk;
}

int cmd_graph_check(const CommandConfig &cfg, std::ostream &out) {
    if (cfg.graph_path.empty()) {
        throw UsageError("--graph is required");
    }
    GraphFile gf = parse_graph(read_file(cfg.graph_path));
    std::vector<size_t> physical = cfg.physical.empty() ? gf.physical : cfg.physical;
    if (physical.empty()) {
        throw UsageError("no physical qubits: give --physical or a `physical` line in the graph file");
    }
    TreeLayout layout;
    try {
        layout = validate_for_dwr(gf.graph, physical);
    } catch (const GraphError &e) {
        if (cfg.format == "kv") {
            out << "valid=0\nerror=" << graph_error_name(e.kind) << "\n";
        } else {
            out << "invalid: " << graph_error_name(e.kind) << ": " << e.what() << "\n";
        }
        return kExitVerificationFailed;
    }
    if (cfg.format == "kv") {
        out << "valid=1\nleaves=" << layout.leaves.size() << "\nparents=" << layout.parents.size()
            << "\ninternal=" << layout.internal.size() << "\nauxiliary=" << layout.auxiliary().size() << "\n";
    } else {
        out << "valid: |L|=" << layout.leaves.size() << " |parents|=" << layout.parents.size()
            << " |I|=" << layout.internal.size() << "\n";
        out << "auxiliary qubits: " << layout.auxiliary().size() << "\n";
        out << "tree edges:";
        for (auto [u, v] : layout.tree_edges) {
            out << " " << u << "-" << v;
        }
        out << "\n";
    }
    return kExitOk;
}

// Named-qubit rendering for the CX demo.
const char *const kCxNames[] = {"c", "t", "a"};

std::string named_pauli(const PauliString &p) {
    std::string s;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        char letter = p.letter(q);
        if (letter != 'I') {
            s += (s.empty() ? "" : " ") + std::string(1, letter) + "_" + kCxNames[q];
        }
    }
    return s.empty() ? "I" : s;
}

std::string signed_text(const SignedPauli &sp) {
    std::string prefix;
    if (!sp.sign.is_constant()) {
        prefix = "(-1)^(" + sp.sign.str(1) + ") ";
    } else if (sp.sign.constant) {
        prefix = "-";
    }
    return prefix + named_pauli(sp.pauli);
}

void append_power(std::string &s, char letter, size_t q, const OutcomeExpr &e) {
    if (e.is_constant() && !e.constant) {
        return;
    }
    s += (s.empty() ? "" : " ") + std::string(1, letter) + kCxNames[q];
    if (!e.is_constant()) {
        s += "^(" + e.str(1) + ")";
    }
}

}  // namespace

std::string cx_demo_text() {
    CxDemo demo = cx_via_measurements();
    const Circuit &c = demo.circuit;
    std::ostringstream out;
    out << "sequence (control c=" << demo.control << ", target t=" << demo.target << ", auxiliary a=" << demo.auxiliary
        << "):\n";
    for (const MeasureOp &op : c.ops()) {
        out << "  m" << op.outcome_id + 1 << ": " << named_pauli(op.full_basis(c.qubit_count)) << "\n";
    }
    std::vector<PauliString> inputs;
    for (size_t q : {demo.control, demo.target}) {
        for (char letter : {'X', 'Z'}) {
            inputs.push_back(PauliString::from_sparse(c.qubit_count, {q}, std::string(1, letter)));
        }
    }
    std::vector<SignedPauli> map = pauli_map(c, inputs);
    out << "map:\n";
    for (size_t k = 0; k < inputs.size(); k++) {
        out << "  " << named_pauli(inputs[k]) << " -> " << signed_text(map[k]) << "\n";
    }
    auto [xs, zs] = frame_correction(map);
    std::string correction;
    for (size_t q = 0; q < xs.size(); q++) {
        append_power(correction, 'X', q, xs[q]);
    }
    for (size_t q = 0; q < zs.size(); q++) {
        append_power(correction, 'Z', q, zs[q]);
    }
    out << "correction: " << (correction.empty() ? "I" : correction) << "\n";
    return out.str();
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CommandConfig cfg;
    CLI::App app{"Weight-2 measurement compiler and verifier", "dwr"};
    app.require_subcommand(1);

    auto add_format = [&](CLI::App *sub) {
        sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"text", "kv"}));
    };
    auto add_physical = [&](CLI::App *sub) {
        sub->add_option("--physical", cfg.physical, "Physical qubits (overrides the graph file)");
    };

    CLI::App *compile = app.add_subcommand("compile", "Compile a weight-2 measurement sequence");
    compile->add_option("--scheme", cfg.scheme, "Compilation scheme")
        ->check(CLI::IsMember({"general", "constant-space", "depth5", "depth6", "interpolating"}));
    compile->add_option("--w", cfg.w, "Target weight")->check(CLI::PositiveNumber);
    compile->add_option("--a", cfg.a, "Auxiliary qubits (interpolating)")->check(CLI::PositiveNumber);
    compile->add_option("--target", cfg.target, "Target Pauli on the physical qubits, e.g. XXYZ");
    compile->add_option("--graph", cfg.graph_path, "Connectivity graph file (general scheme)");
    compile->add_option("-o,--output", cfg.output_path, "Write the circuit here instead of standard output");
    compile->add_option("--rebase", cfg.rebase, "How non-Z targets are reached")
        ->check(CLI::IsMember({"basis", "rotations"}));
    compile->add_flag("--reschedule", cfg.reschedule, "Compact layers after compiling");
    add_physical(compile);
    add_format(compile);

    CLI::App *verify = app.add_subcommand("verify", "Verify a circuit file against a target");
    verify->add_option("--circuit", cfg.circuit_path, "Circuit file");
    verify->add_option("--target", cfg.target, "Target Pauli on the physical qubits");
    verify->add_flag("--dense", cfg.dense, "Also run the dense state-vector oracle");
    verify->add_option("--samples", cfg.samples, "Dense oracle: random outcome walks (0 = exhaustive)");
    verify->add_option("--seed", cfg.seed, "Dense oracle RNG seed");
    verify->add_flag("--reschedule", cfg.reschedule, "Reschedule before verifying");
    add_format(verify);

    CLI::App *metrics_cmd = app.add_subcommand("metrics", "Print A, D, V and idle counts of a circuit file");
    metrics_cmd->add_option("--circuit", cfg.circuit_path, "Circuit file");
    metrics_cmd->add_flag("--reschedule", cfg.reschedule, "Reschedule first");
    add_format(metrics_cmd);

    CLI::App *graph_check = app.add_subcommand("graph-check", "Check a connectivity graph for a weight-2 layout");
    graph_check->add_option("--graph", cfg.graph_path, "Connectivity graph file");
    add_physical(graph_check);
    add_format(graph_check);

    CLI::App *demo = app.add_subcommand("demo-cx", "Print the measurement-based CX and its Pauli map");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (compile->parsed()) {
            return cmd_compile(cfg, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, out, err);
        }
        if (metrics_cmd->parsed()) {
            return cmd_metrics(cfg, out);
        }
        if (graph_check->parsed()) {
            return cmd_graph_check(cfg, out);
        }
        if (demo->parsed()) {
            out << cx_demo_text();
            return kExitOk;
        }
    } catch (const std::invalid_argument &e) {
        // Parse errors from the file formats land here too.
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace dwr
