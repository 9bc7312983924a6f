// Command-line front-end: quantize a distribution file, sweep the
// divergence bounds over a precision range, quantize Markov transition
// matrices row-wise, or cross-check the greedy allocator against the
// exhaustive oracle.
//
// Exit codes: 0 success, 2 invalid input, 3 infeasible precision,
// 4 oracle instance too large.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mtype/mtype.hpp>

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw mtype::invalid_input("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// All floats in CLI output carry 12 significant digits.
std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Round through the 12-digit decimal form so JSON prints the same values
// the CSV stream would.
json json_real(double v) { return std::stod(format_real(v)); }

std::vector<double> parse_csv_numbers(std::string text) {
    for (char& c : text)
        if (c == ',' || c == ';') c = ' ';
    std::istringstream in(text);
    std::vector<double> values;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size())
            throw mtype::invalid_input("cannot parse number: " + token);
        values.push_back(v);
    }
    if (values.empty())
        throw mtype::invalid_input("input contains no numbers");
    return values;
}

// Vector input: JSON object {"probabilities": [...]}, a bare JSON array,
// or plain CSV with one value per line/cell.
std::vector<double> load_vector(const std::string& path) {
    const std::string text = slurp(path);
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw mtype::invalid_input("input file is empty: " + path);
    if (text[first] != '{' && text[first] != '[')
        return parse_csv_numbers(text);

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw mtype::invalid_input("malformed JSON in " + path + ": " + e.what());
    }
    json entries = doc;
    if (doc.is_object()) {
        if (!doc.contains("probabilities"))
            throw mtype::invalid_input("JSON object lacks a \"probabilities\" array");
        entries = doc["probabilities"];
    }
    if (!entries.is_array() || entries.empty())
        throw mtype::invalid_input("probabilities must be a non-empty array");
    std::vector<double> values;
    values.reserve(entries.size());
    for (const auto& x : entries) {
        if (!x.is_number())
            throw mtype::invalid_input("probabilities must be numbers");
        values.push_back(x.get<double>());
    }
    return values;
}

// Matrix input: JSON array of rows.
std::vector<std::vector<double>> load_matrix(const std::string& path) {
    const std::string text = slurp(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception&) {
        throw mtype::invalid_input("matrix input must be a JSON array of rows");
    }
    if (!doc.is_array() || doc.empty())
        throw mtype::invalid_input("matrix input must be a non-empty JSON array of rows");
    std::vector<std::vector<double>> rows;
    rows.reserve(doc.size());
    for (const auto& row : doc) {
        if (!row.is_array())
            throw mtype::invalid_input("matrix rows must be arrays");
        std::vector<double> r;
        r.reserve(row.size());
        for (const auto& x : row) {
            if (!x.is_number())
                throw mtype::invalid_input("matrix entries must be numbers");
            r.push_back(x.get<double>());
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw mtype::invalid_input("cannot open output file: " + out_path);
    out << text;
}

mtype::cost_kind parse_cost(const std::string& name) {
    const auto kind = mtype::cost_kind_from_string(name);
    if (!kind)
        throw mtype::invalid_input("unknown cost kind: " + name);
    return *kind;
}

struct quantize_options {
    std::string input;
    std::int64_t m = 0;
    std::string cost;
    bool normalize = false;
    std::string out;
};

int run_quantize(const quantize_options& opt) {
    const mtype::cost_kind kind = parse_cost(opt.cost);
    const mtype::target_distribution t(load_vector(opt.input), opt.normalize);
    const mtype::quantized_distribution q = mtype::quantize(t, opt.m, kind);

    json record;
    record["M"] = opt.m;
    record["cost"] = std::string(mtype::to_string(kind));
    record["cost_value"] = json_real(mtype::evaluate(kind, t, q));
    record["counts"] = q.counts();
    json probs = json::array();
    for (std::size_t i = 0; i < q.size(); ++i) probs.push_back(json_real(q.prob(i)));
    record["probs"] = probs;
    if (kind == mtype::cost_kind::kl_target_first) {
        record["bound_eq12"] = json_real(mtype::projection_bound(t, opt.m));
        const mtype::vd_bound_result vb = mtype::vd_bound(t, opt.m);
        record["bound_eq7"] = json_real(vb.value);
        record["bound_eq7_valid"] = vb.valid;
    }
    write_output(record.dump(2) + "\n", opt.out);
    return 0;
}

struct sweep_options {
    std::string input;
    std::int64_t m_min = 0;
    std::int64_t m_max = 0;
    std::string out;
};

int run_sweep(const sweep_options& opt) {
    const mtype::target_distribution t(load_vector(opt.input));
    const std::vector<mtype::bound_report> reports = mtype::bound_sweep(t, opt.m_min, opt.m_max);
    std::ostringstream csv;
    csv << "M,exact,bound_eq12,bound_eq7,bound_eq7_valid\n";
    for (const mtype::bound_report& r : reports) {
        csv << r.m << ',' << format_real(r.exact) << ',' << format_real(r.projection_bound)
            << ',' << format_real(r.vd_bound) << ',' << (r.vd_bound_valid ? "true" : "false")
            << '\n';
    }
    write_output(csv.str(), opt.out);
    return 0;
}

struct markov_options {
    std::string input;
    std::int64_t m = 0;
    std::string out;
};

int run_markov(const markov_options& opt) {
    const mtype::markov_model chain(load_matrix(opt.input));
    if (!mtype::is_irreducible(chain))
        throw mtype::invalid_input("transition matrix is not irreducible");
    const mtype::quantized_markov q = mtype::quantize_markov(chain, opt.m);
    const mtype::target_distribution mu = mtype::stationary_distribution(chain);

    json record;
    record["M"] = opt.m;
    record["counts"] = q.count_rows;
    json stationary = json::array();
    for (std::size_t i = 0; i < mu.size(); ++i) stationary.push_back(json_real(mu[i]));
    record["stationary"] = stationary;
    record["divergence_rate"] = json_real(mtype::divergence_rate(chain, q));
    record["graph_preserved"] = mtype::same_transition_graph(chain, q);
    write_output(record.dump(2) + "\n", opt.out);
    return 0;
}

struct oracle_options {
    std::string input;
    std::int64_t m = 0;
    std::string cost;
};

int run_oracle(const oracle_options& opt) {
    const mtype::cost_kind kind = parse_cost(opt.cost);
    const mtype::target_distribution t(load_vector(opt.input));
    const mtype::oracle_result oracle = mtype::brute_force(t, opt.m, kind);
    const double greedy_cost =
        mtype::evaluate(kind, t, mtype::quantize(t, opt.m, kind));

    json record;
    record["M"] = opt.m;
    record["cost"] = std::string(mtype::to_string(kind));
    record["counts"] = oracle.best_counts;
    record["cost_value"] = json_real(oracle.best_cost);
    record["num_candidates"] = oracle.num_candidates;
    record["greedy_gap"] = json_real(std::abs(greedy_cost - oracle.best_cost));
    write_output(record.dump(2) + "\n", "");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal M-type approximation of discrete probability distributions"};
    app.require_subcommand(1);

    quantize_options qopt;
    CLI::App* quantize_cmd =
        app.add_subcommand("quantize", "Approximate a distribution by an M-type distribution");
    quantize_cmd->add_option("--input", qopt.input, "target distribution file (JSON or CSV)")
        ->required();
    quantize_cmd->add_option("--M", qopt.m, "precision of the approximation")->required();
    quantize_cmd
        ->add_option("--cost", qopt.cost,
                     "variational | kl-approx-first | kl-target-first | "
                     "chi2-approx-first | chi2-target-first")
        ->required();
    quantize_cmd->add_flag("--normalize", qopt.normalize, "rescale the input to sum to 1");
    quantize_cmd->add_option("--out", qopt.out, "output path (default: stdout)");

    sweep_options sopt;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Exact divergence and both bounds over a precision range");
    sweep_cmd->add_option("--input", sopt.input, "target distribution file (JSON or CSV)")
        ->required();
    sweep_cmd->add_option("--M-min", sopt.m_min, "first precision")->required();
    sweep_cmd->add_option("--M-max", sopt.m_max, "last precision")->required();
    sweep_cmd->add_option("--out", sopt.out, "output path (default: stdout)");

    markov_options mopt;
    CLI::App* markov_cmd =
        app.add_subcommand("markov", "Row-wise M-type quantization of a transition matrix");
    markov_cmd->add_option("--input", mopt.input, "transition matrix file (JSON array of rows)")
        ->required();
    markov_cmd->add_option("--M", mopt.m, "precision of the approximation")->required();
    markov_cmd->add_option("--out", mopt.out, "output path (default: stdout)");

    oracle_options oopt;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "Exhaustive optimum and greedy-vs-oracle gap");
    oracle_cmd->add_option("--input", oopt.input, "target distribution file (JSON or CSV)")
        ->required();
    oracle_cmd->add_option("--M", oopt.m, "precision of the approximation")->required();
    oracle_cmd
        ->add_option("--cost", oopt.cost,
                     "variational | kl-approx-first | kl-target-first | "
                     "chi2-approx-first | chi2-target-first")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (quantize_cmd->parsed()) return run_quantize(qopt);
        if (sweep_cmd->parsed()) return run_sweep(sopt);
        if (markov_cmd->parsed()) return run_markov(mopt);
        if (oracle_cmd->parsed()) return run_oracle(oopt);
    } catch (const mtype::too_large& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const mtype::infeasible& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const mtype::invalid_input& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
