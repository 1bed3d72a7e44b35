#ifndef DSPEC_IO_HPP
#define DSPEC_IO_HPP

#include <string>

#include "dspec/graph.hpp"
#include "dspec/kernels.hpp"

namespace dspec {

/// Graph file schema:
///   {"vertices":[{"id":0,"m":1.0,"c":0.0},...],
///    "edges":[{"u":0,"v":1,"b":1.0},...]}
/// "m" defaults to 1 and "c" to 0; ids must cover 0..n-1. Loading goes
/// through build_graph, so file and in-memory construction agree exactly.
/// Unknown keys are rejected.
WeightedGraph load_graph_json(const std::string& text);
WeightedGraph load_graph_file(const std::string& path);
std::string graph_to_json(const WeightedGraph& g);
void save_graph_file(const WeightedGraph& g, const std::string& path);

/// Grid schema: {"dim":d,"extent":[...],"h":...} with optional "origin".
GridSpec parse_grid_json(const std::string& text);

/// Kernel schema: {"type":"fractional","alpha":...} or
/// {"type":"table","alpha":...,"pairs":[{"u":..,"v":..,"j":..},...]} with
/// optional "lower_const". Table pairs are symmetric by construction and
/// unlisted pairs carry j = 0.
KernelSpec parse_kernel_json(const std::string& text, const GridSpec& grid);

/// Model schema: {"grid":{...},"kernel":{...}}; builds the discretized graph.
WeightedGraph build_from_model_json(const std::string& text);

/// Perturbation schema:
///   {"plus":[...],"minus":[...],"alpha":...,"override_admissibility":false}
struct PerturbationConfig {
    Eigen::VectorXd plus;
    Eigen::VectorXd minus;
    double alpha = 1.0;
    bool override_admissibility = false;
};

PerturbationConfig parse_perturbation_json(const std::string& text, int n);
PerturbationConfig load_perturbation_file(const std::string& path, int n);

/// Writes content to path through a temp file + rename so readers never see
/// a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace dspec

#endif
