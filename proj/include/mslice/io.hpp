#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/property_tree/ptree.hpp>

#include "mslice/experiment.hpp"
#include "mslice/multislice.hpp"
#include "mslice/report.hpp"
#include "mslice/statistics.hpp"
#include "mslice/tensor.hpp"
#include "mslice/tensor_norms.hpp"

namespace mslice::io {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Ini = boost::property_tree::ptree;

/// INI-style configuration with sections [spec], [statistic], [bound], [run].
/// Lists are comma separated: "kappa = 10, 10".
Ini read_config(const std::string& path);
Ini parse_config(std::istream& in);

std::vector<double> parse_real_list(const std::string& text);
std::vector<std::size_t> parse_count_list(const std::string& text);

/// [spec] kappa / values. Missing values default to 0, 1, ..., L-1.
MultisliceSpec spec_from_config(const Ini& ini);

/// Full experiment. [statistic] id, n, scale (a number or "sqrt_n"),
/// vertices, edges, dim; [bound] id, c, lipschitz, sum_c_sq, qualitative;
/// [run] t_grid, samples, seed, workers, centering, tail, relative, alpha.
/// For triangles the [spec] section may be omitted: kappa = (N - M, M)
/// follows from vertices and edges.
TailExperiment experiment_from_config(const Ini& ini);

/// Shortest round-trip decimal form.
std::string format_real(double x);

std::string spec_to_config(const MultisliceSpec& spec);

std::string configuration_to_json(const Configuration& config);
Configuration configuration_from_json(const std::string& line);
std::vector<Configuration> read_configurations(std::istream& in);

std::string report_to_json(const CheckReport& report);

void write_tail_csv(std::ostream& out, const TailReport& report);
std::string tail_metadata_json(const TailReport& report);

/// {"shape":[...]} followed by one {"index":[...],"value":v} line per entry.
void write_tensor_jsonl(std::ostream& out, const DenseTensor& tensor);
DenseTensor read_tensor_jsonl(std::istream& in);

/// One {"order":k,"index":[...],"coefficient":a} line per term; the constant
/// has order 0 and an empty index. A {"dimension":N} line comes first.
void write_polynomial_jsonl(std::ostream& out, const MultilinearPolynomial& poly);
MultilinearPolynomial read_polynomial_jsonl(std::istream& in);

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(std::istream& in);

/// partition,value,restarts,gap_estimate
void write_norms_csv(std::ostream& out, const std::vector<PartitionNorm>& norms);

}  // namespace mslice::io
