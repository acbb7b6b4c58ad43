#include "mslice/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include "json.hpp"

namespace mslice::io {

using nlohmann::json;

Ini read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in);
}

Ini parse_config(std::istream& in) {
    Ini ini;
    try {
        boost::property_tree::ini_parser::read_ini(in, ini);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return ini;
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(","));
    for (auto& p : parts) boost::trim(p);
    if (parts.size() == 1 && parts[0].empty()) parts.clear();
    return parts;
}

double parse_real(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError("not a finite real number: '" + s + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(const std::string& s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ConfigError("not a nonnegative integer: '" + s + "'");
    }
    return v;
}

bool parse_bool(const std::string& s) {
    const auto t = boost::to_lower_copy(boost::trim_copy(s));
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError("not a boolean: '" + s + "'");
}

std::optional<std::string> get(const Ini& ini, const std::string& key) {
    // trailing "; comment" is allowed after a value
    if (auto v = ini.get_optional<std::string>(key)) return boost::trim_copy(v->substr(0, v->find(';')));
    return std::nullopt;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& p : split_list(text)) out.push_back(parse_real(p));
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& p : split_list(text)) out.push_back(static_cast<std::size_t>(parse_unsigned(p)));
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

MultisliceSpec spec_from_config(const Ini& ini) {
    const auto kappa_text = get(ini, "spec.kappa");
    if (!kappa_text) throw ConfigError("[spec] kappa is required");
    const auto kappa = parse_count_list(*kappa_text);
    std::vector<double> values;
    if (const auto v = get(ini, "spec.values")) {
        values = parse_real_list(*v);
    } else {
        for (std::size_t l = 0; l < kappa.size(); ++l) values.push_back(static_cast<double>(l));
    }
    try {
        return MultisliceSpec(kappa, values);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid [spec]: ") + e.what());
    }
}

TailExperiment experiment_from_config(const Ini& ini) {
    StatisticSpec st;
    st.id = get(ini, "statistic.id").value_or("sample_mean");
    if (const auto v = get(ini, "statistic.n")) st.n = parse_unsigned(*v);
    if (const auto v = get(ini, "statistic.vertices")) st.vertices = parse_unsigned(*v);
    if (const auto v = get(ini, "statistic.dim")) st.dim = parse_unsigned(*v);
    if (const auto v = get(ini, "statistic.scale")) {
        st.scale = *v == "sqrt_n" ? std::sqrt(static_cast<double>(st.n)) : parse_real(*v);
    }

    std::optional<MultisliceSpec> spec;
    if (ini.get_child_optional("spec")) {
        spec = spec_from_config(ini);
    } else if (st.id == "triangles") {
        const auto edges = get(ini, "statistic.edges");
        if (!edges) throw ConfigError("triangles needs [statistic] edges (or a [spec] section)");
        try {
            spec = EdgeConfiguration::spec(st.vertices, parse_unsigned(*edges));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("invalid graph parameters: ") + e.what());
        }
    } else {
        throw ConfigError("[spec] section is required");
    }

    TailExperiment e{*spec, st, {}, 100000, 1, 1, "serfling", {}, Centering::Exact, TailSide::TwoSided,
                     false, false, 1e-3};
    e.bound_id = get(ini, "bound.id").value_or("serfling");
    bool constant_given = false;
    if (const auto v = get(ini, "bound.c")) {
        e.bound.c = parse_real(*v);
        constant_given = true;
    }
    if (const auto v = get(ini, "bound.lipschitz")) e.bound.lipschitz = parse_real(*v);
    if (const auto v = get(ini, "bound.hs")) e.bound.hs = parse_real(*v);
    if (const auto v = get(ini, "bound.op")) e.bound.op = parse_real(*v);
    e.qualitative = bounds::has_unspecified_constant(e.bound_id) && !constant_given;
    if (const auto v = get(ini, "bound.qualitative")) e.qualitative = parse_bool(*v);

    const auto grid = get(ini, "run.t_grid");
    if (!grid) throw ConfigError("[run] t_grid is required");
    e.t_grid = parse_real_list(*grid);
    if (const auto v = get(ini, "run.samples")) e.samples = parse_unsigned(*v);
    if (const auto v = get(ini, "run.seed")) e.seed = parse_unsigned(*v);
    if (const auto v = get(ini, "run.workers")) e.workers = parse_unsigned(*v);
    if (const auto v = get(ini, "run.alpha")) e.alpha = parse_real(*v);
    if (const auto v = get(ini, "run.relative")) e.relative = parse_bool(*v);
    try {
        const auto side = get(ini, "run.tail");
        e.tail = side ? parse_tail_side(*side) : default_tail_side(e.bound_id);
        if (const auto v = get(ini, "run.centering")) {
            e.centering = parse_centering(*v);
        } else {
            e.centering = exact_center(e) ? Centering::Exact : Centering::MonteCarlo;
        }
        validate(e);
        e.bound = default_bound_params(e);
        // an explicit sum c_i^2 wins over the statistic's default
        if (const auto v = get(ini, "bound.sum_c_sq")) e.bound.sum_c_sq = parse_real(*v);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("invalid experiment: ") + ex.what());
    }
    return e;
}

std::string format_real(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string spec_to_config(const MultisliceSpec& spec) {
    std::ostringstream out;
    out << "[spec]\nkappa = ";
    for (std::size_t l = 0; l < spec.levels(); ++l) out << (l ? ", " : "") << spec.kappa()[l];
    out << "\nvalues = ";
    for (std::size_t l = 0; l < spec.levels(); ++l) out << (l ? ", " : "") << format_real(spec.value(l));
    out << '\n';
    return out.str();
}

std::string configuration_to_json(const Configuration& config) {
    std::string out = "[";
    for (std::size_t k = 0; k < config.size(); ++k) {
        if (k) out += ',';
        out += format_real(config[k]);
    }
    return out + "]";
}

Configuration configuration_from_json(const std::string& line) {
    try {
        const auto j = json::parse(line);
        if (!j.is_array()) throw ConfigError("configuration must be a JSON array");
        return Configuration(j.get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed configuration line: ") + e.what());
    }
}

std::vector<Configuration> read_configurations(std::istream& in) {
    std::vector<Configuration> out;
    std::string line;
    while (std::getline(in, line)) {
        if (boost::trim_copy(line).empty()) continue;
        out.push_back(configuration_from_json(line));
    }
    return out;
}

std::string report_to_json(const CheckReport& r) {
    json j = {{"check", r.check}, {"spec", r.spec},  {"lhs", r.lhs},
              {"rhs", r.rhs},     {"slack", r.slack}, {"verdict", r.pass ? "PASS" : "FAIL"}};
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j.dump();
}

void write_tail_csv(std::ostream& out, const TailReport& report) {
    out << "t,p_hat,ci_lo,ci_hi,bound,verdict\n";
    for (const auto& row : report.rows) {
        out << format_real(row.t) << ',' << format_real(row.p_hat) << ',' << format_real(row.ci_lo) << ','
            << format_real(row.ci_hi) << ',' << format_real(row.bound) << ',' << row.verdict << '\n';
    }
}

std::string tail_metadata_json(const TailReport& r) {
    json j = {{"statistic", r.statistic},
              {"bound", r.bound_id},
              {"seed", r.seed},
              {"samples", r.samples},
              {"workers", r.workers},
              {"runtime_seconds", r.runtime_seconds},
              {"centering", to_string(r.center.method)},
              {"center", r.center.value},
              {"center_se", r.center.standard_error},
              {"sample_mean", r.sample_mean},
              {"sample_se", r.sample_se},
              {"mode", r.qualitative ? "qualitative" : "quantitative"},
              {"monotone", r.monotone},
              {"exact_law", r.exact_law},
              {"verdict", r.pass ? "PASS" : "FAIL"}};
    return j.dump();
}

void write_tensor_jsonl(std::ostream& out, const DenseTensor& tensor) {
    out << json{{"shape", tensor.shape()}}.dump() << '\n';
    const auto data = tensor.data();
    for (std::size_t flat = 0; flat < data.size(); ++flat) {
        out << json{{"index", tensor.unflatten(flat)}, {"value", data[flat]}}.dump() << '\n';
    }
}

DenseTensor read_tensor_jsonl(std::istream& in) {
    std::string line;
    std::optional<DenseTensor> tensor;
    try {
        while (std::getline(in, line)) {
            if (boost::trim_copy(line).empty()) continue;
            const auto j = json::parse(line);
            if (j.contains("shape")) {
                tensor.emplace(j.at("shape").get<std::vector<std::size_t>>());
                continue;
            }
            if (!tensor) throw ConfigError("tensor file must start with a shape line");
            const auto idx = j.at("index").get<std::vector<std::size_t>>();
            (*tensor)(idx) = j.at("value").get<double>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed tensor line: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw ConfigError(std::string("tensor index out of range: ") + e.what());
    }
    if (!tensor) throw ConfigError("empty tensor file");
    return *tensor;
}

void write_polynomial_jsonl(std::ostream& out, const MultilinearPolynomial& poly) {
    out << json{{"dimension", poly.dimension()}}.dump() << '\n';
    out << json{{"order", 0}, {"index", json::array()}, {"coefficient", poly.constant()}}.dump() << '\n';
    for (const auto& t : poly.terms()) {
        out << json{{"order", t.indices.size()}, {"index", t.indices}, {"coefficient", t.coefficient}}.dump()
            << '\n';
    }
}

MultilinearPolynomial read_polynomial_jsonl(std::istream& in) {
    std::string line;
    std::optional<MultilinearPolynomial> poly;
    try {
        while (std::getline(in, line)) {
            if (boost::trim_copy(line).empty()) continue;
            const auto j = json::parse(line);
            if (j.contains("dimension")) {
                poly.emplace(j.at("dimension").get<std::size_t>());
                continue;
            }
            if (!poly) throw ConfigError("polynomial file must start with a dimension line");
            auto idx = j.at("index").get<std::vector<std::size_t>>();
            if (j.contains("order") && j.at("order").get<std::size_t>() != idx.size()) {
                throw ConfigError("term order does not match its index tuple");
            }
            poly->add_term(std::move(idx), j.at("coefficient").get<double>());
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed polynomial line: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid polynomial term: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw ConfigError(std::string("invalid polynomial term: ") + e.what());
    }
    if (!poly) throw ConfigError("empty polynomial file");
    return *poly;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_real(m(i, j));
        out << '\n';
    }
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (boost::trim_copy(line).empty()) continue;
        rows.push_back(parse_real_list(line));
        if (rows.back().size() != rows.front().size()) throw ConfigError("ragged matrix CSV");
    }
    if (rows.empty()) throw ConfigError("empty matrix CSV");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

void write_norms_csv(std::ostream& out, const std::vector<PartitionNorm>& norms) {
    out << "partition,value,restarts,gap_estimate\n";
    for (const auto& n : norms) {
        out << '"' << n.partition.to_string() << "\"," << format_real(n.result.value) << ',' << n.result.restarts
            << ',' << format_real(n.result.gap_estimate) << '\n';
    }
}

}  // namespace mslice::io
