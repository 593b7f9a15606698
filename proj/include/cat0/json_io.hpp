#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cat0/ann.hpp"
#include "cat0/euclidean.hpp"
#include "cat0/graph_comparison.hpp"
#include "cat0/metric_space.hpp"

namespace cat0 {

/// FNV-1a 64-bit digest as a 16-digit hex string.
std::string fnv1a_hex(std::string_view bytes);

std::string read_file(const std::string& path);  // throws on IO failure
void write_file(const std::string& path, std::string_view content);

/// Digest of a file's raw bytes, for pinning reports to their inputs.
std::string file_checksum(const std::string& path);

/// {"labels": [...], "dist": [[...], ...]}
FiniteMetricSpace space_from_json(const std::string& text);
std::string space_to_json(const FiniteMetricSpace& space);

/// {"labels": [...], "points": [[coords of point 0], ...], "epsilon": e?}
/// Points may live in any ambient dimension; epsilon is optional payload
/// for the single-pair perturbation.
struct ConfigFile {
  EuclideanConfig config;
  std::optional<double> epsilon;
};
ConfigFile config_from_json(const std::string& text);
std::string config_to_json(const EuclideanConfig& config,
                           std::optional<double> epsilon = std::nullopt);

/// Either file kind, as a metric space: "dist" files directly, "points"
/// files through the Euclidean metric; a present epsilon is applied to the
/// pair (z0,z1), which must then exist.
FiniteMetricSpace load_space(const std::string& path);

/// {"n": int, "edges": [[u,v], ...]}
ComparisonGraph graph_from_json(const std::string& text);
std::string graph_to_json(const ComparisonGraph& graph);

std::string certificate_to_json(const ComparisonGraph& graph,
                                const FarkasCertificate& cert);
FarkasCertificate certificate_from_json(const ComparisonGraph& graph,
                                        const std::string& text);

std::string gram_to_json(const GramSolution& solution);

std::string ann_to_json(const AnnCertificate& cert);
AnnCertificate ann_from_json(const std::string& text);

std::string trace_to_json(const ProofTrace& trace);

}  // namespace cat0
