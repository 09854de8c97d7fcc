#include "noisylis/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace noisylis::io {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) return std::to_string(value);
    return std::string(buf.data(), ptr);
}

Permutation read_permutation(std::istream& in) {
    std::stringstream whole;
    whole << in.rdbuf();
    const std::string text = whole.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    std::vector<std::int64_t> keys;

    if (first != std::string::npos && text[first] == '[') {
        json arr;
        try {
            arr = json::parse(text);
        } catch (const json::parse_error& e) {
            throw MalformedInput(std::string("permutation JSON: ") + e.what());
        }
        for (const auto& v : arr) {
            if (!v.is_number_integer()) throw MalformedInput("permutation JSON must hold integers only");
            keys.push_back(v.get<std::int64_t>());
        }
    } else {
        std::istringstream lines(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(lines, line)) {
            ++lineno;
            const auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            const auto e = line.find_last_not_of(" \t\r");
            const std::string_view token(line.data() + b, e - b + 1);
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc{} || ptr != token.data() + token.size()) {
                throw MalformedInput("line " + std::to_string(lineno) + ": not an integer: '" + std::string(token) + "'");
            }
            keys.push_back(v);
        }
    }
    return Permutation::from_keys(keys);
}

Permutation read_permutation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_permutation(in);
}

void write_permutation(std::ostream& out, const Permutation& s, PermutationFormat format) {
    if (format == PermutationFormat::json) {
        out << json(std::vector<Element>(s.elems().begin(), s.elems().end())).dump() << '\n';
        return;
    }
    for (Element x : s.elems()) out << x << '\n';
}

json oracle_to_json(const ComparisonOracle& oracle) {
    json j{{"p", oracle.p()}, {"seed", oracle.seed()}, {"mode", std::string(to_string(oracle.mode()))}};
    if (oracle.mode() == OracleMode::threshold) j["tau"] = oracle.tau();
    return j;
}

ComparisonOracle oracle_from_json(const json& j) {
    try {
        const auto mode = parse_oracle_mode(j.at("mode").get<std::string>());
        if (!mode) throw InvalidParameter("unknown oracle mode " + j.at("mode").dump());
        const std::int64_t tau = j.contains("tau") ? j.at("tau").get<std::int64_t>() : 0;
        if (*mode == OracleMode::threshold && !j.contains("tau")) throw InvalidParameter("threshold oracle needs tau");
        return ComparisonOracle(j.at("p").get<double>(), j.at("seed").get<Seed>(), *mode, tau);
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("oracle config: ") + e.what());
    }
}

json lis_result_to_json(const LisResult& result) {
    json j{{"length", result.length()}, {"d_used", result.d_used}, {"subseq", result.subseq}};
    if (result.flags) {
        j["flags"] = {{"subsequence", result.flags->is_subsequence_of_input},
                      {"distant", result.flags->is_2d_distant},
                      {"increasing", result.flags->is_truly_increasing}};
    } else {
        j["flags"] = nullptr;
    }
    return j;
}

json trial_to_json(const TrialRecord& r) {
    json j{{"schema_version", kSchemaVersion},
           {"seed", r.seed},
           {"n", r.n},
           {"p", r.p},
           {"input", r.input},
           {"sorter", r.sorter},
           {"w", r.window},
           {"r", r.passes},
           {"d_policy", r.d_policy},
           {"d_used", r.d_used},
           {"max_disl", r.max_disl},
           {"total_disl", r.total_disl},
           {"within_budget", r.within_budget},
           {"exact_lis_len", r.exact_lis_len},
           {"exact_checked", r.exact_checked},
           {"lis_lower_bound", r.lis_lower_bound ? json(*r.lis_lower_bound) : json(nullptr)},
           {"approx_len", r.approx_len},
           {"recipe_len", r.recipe_len},
           {"ratio", r.ratio() ? json(*r.ratio()) : json(nullptr)},
           {"truly_increasing", r.truly_increasing},
           {"valid", r.valid},
           {"sort_comparisons", r.sort_comparisons},
           {"result", lis_result_to_json(r.result)}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

void write_trial_csv_header(std::ostream& out) {
    out << "schema_version,seed,n,p,input,sorter,w,r,d_policy,d_used,max_disl,total_disl,within_budget,"
           "exact_lis_len,exact_checked,lis_lower_bound,approx_len,recipe_len,ratio,truly_increasing,valid,"
           "sort_comparisons,error\n";
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + '"';
}

}  // namespace

void write_trial_csv_row(std::ostream& out, const TrialRecord& r) {
    const auto ratio = r.ratio();
    out << kSchemaVersion << ',' << r.seed << ',' << r.n << ',' << format_double(r.p) << ',' << csv_field(r.input)
        << ',' << r.sorter << ',' << r.window << ',' << r.passes << ',' << csv_field(r.d_policy) << ',' << r.d_used
        << ',' << r.max_disl << ',' << r.total_disl << ',' << int(r.within_budget) << ',' << r.exact_lis_len << ','
        << int(r.exact_checked) << ',' << (r.lis_lower_bound ? std::to_string(*r.lis_lower_bound) : "") << ','
        << r.approx_len << ',' << r.recipe_len << ',' << (ratio ? format_double(*ratio) : "") << ','
        << int(r.truly_increasing) << ',' << int(r.valid) << ',' << r.sort_comparisons << ',' << csv_field(r.error)
        << '\n';
}

void write_timing_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << "seed,n,p,sorter,d_policy,sort_ms,lis_ms,recipe_ms,exact_ms\n";
    for (const auto& r : records) {
        out << r.seed << ',' << r.n << ',' << format_double(r.p) << ',' << r.sorter << ',' << csv_field(r.d_policy)
            << ',' << format_double(r.times.sort_ms) << ',' << format_double(r.times.lis_ms) << ','
            << format_double(r.times.recipe_ms) << ',' << format_double(r.times.exact_ms) << '\n';
    }
}

namespace {

json cell_key(const SweepCell& cell) {
    return {{"cell", cell.index},
            {"n", cell.n},
            {"p", cell.p},
            {"sorter", std::string(to_string(cell.sorter.id))},
            {"d_policy", to_string(cell.d_policy)}};
}

}  // namespace

json sweep_summary_to_json(const SweepConfig& config, const std::vector<CellSummary>& cells) {
    json out{{"schema_version", kSchemaVersion},
             {"seeds", config.seeds},
             {"base_seed", config.base_seed},
             {"input", to_string(config.input_kind)},
             {"cells", json::array()}};
    for (const auto& c : cells) {
        json j = cell_key(c.cell);
        j["trials"] = c.trials;
        j["errors"] = c.errors;
        j["median_approx_len"] = c.median_approx_len;
        j["median_recipe_len"] = c.median_recipe_len;
        j["median_exact_lis_len"] = c.median_exact_lis_len;
        j["median_d_used"] = c.median_d_used;
        j["median_max_disl"] = c.median_max_disl;
        j["median_ratio"] = c.median_ratio ? json(*c.median_ratio) : json(nullptr);
        j["truly_increasing_fraction"] = c.truly_increasing_fraction;
        out["cells"].push_back(std::move(j));
    }
    return out;
}

json timing_summary_to_json(const std::vector<CellSummary>& cells) {
    json out{{"schema_version", kSchemaVersion}, {"cells", json::array()}};
    for (const auto& c : cells) {
        json j = cell_key(c.cell);
        j["median_sort_ms"] = c.median_sort_ms;
        j["median_lis_ms"] = c.median_lis_ms;
        out["cells"].push_back(std::move(j));
    }
    return out;
}

void write_dislocation_csv(std::ostream& out, const DislocationCurve& curve) {
    out << "n,seed,max_disl,total_disl,sorter,p,w,r\n";
    const bool refine = curve.spec.id == SorterId::windowed_refine;
    for (const auto& s : curve.samples) {
        out << s.n << ',' << s.seed << ',' << s.max_disl << ',' << s.total_disl << ',' << to_string(curve.spec.id)
            << ',' << format_double(curve.p) << ',' << (refine ? resolve_window(curve.spec, s.n) : 0) << ','
            << (refine ? curve.spec.passes : 0) << '\n';
    }
}

json dislocation_summary_to_json(const DislocationCurve& curve) {
    json out{{"schema_version", kSchemaVersion},
             {"sorter", std::string(to_string(curve.spec.id))},
             {"p", curve.p},
             {"rows", json::array()}};
    for (const auto& s : curve.summary) {
        out["rows"].push_back({{"n", s.n},
                               {"max_disl_median", s.max_disl_median},
                               {"max_disl_p95", s.max_disl_p95},
                               {"max_disl_max", s.max_disl_max},
                               {"total_disl_mean", s.total_disl_mean}});
    }
    return out;
}

void write_failure_csv(std::ostream& out, const FailureStats& stats) {
    out << "trial,seed,member_index,returned_length,truly_increasing,success\n";
    for (const auto& r : stats.rows) {
        out << r.trial << ',' << r.seed << ',' << r.member_index << ',' << r.returned_length << ','
            << int(r.truly_increasing) << ',' << int(r.success) << '\n';
    }
}

json failure_summary_to_json(const FailureStats& stats) {
    return {{"schema_version", kSchemaVersion},
            {"n", stats.n},
            {"p", stats.p},
            {"eta", stats.eta},
            {"trials", stats.trials},
            {"failures", stats.failures},
            {"failure_rate", stats.failure_rate},
            {"ci_low", stats.ci_low},
            {"ci_high", stats.ci_high}};
}

}  // namespace noisylis::io
