#pragma once

// Three-legged gauge vertices (gamma^m)_{y'' y} and tensor networks built from
// them, contracted exactly as sparse tensors. Networks may also contain
// uniting nodes that import the quantum-set map iota^(m).

#include "finq/cliff.hpp"

#include <map>
#include <string>
#include <vector>

namespace finq {

enum class LegKind { spinor, dual_spinor, vector, monad, dual_monad };

std::string to_string(LegKind k);
/// The kind an edge must join: spinor <-> dual_spinor, vector <-> vector, monad <-> dual_monad.
LegKind partner(LegKind k);

struct Leg {
  LegKind kind = LegKind::vector;
  Eigen::Index dim = 0;
  int parity = 0;  // 1 for spinor kinds and monads, 0 for vectors
};

/// Coordinate-list tensor with exact entries (zeros are never stored).
struct SparseTensor {
  std::vector<Eigen::Index> dims;
  std::map<std::vector<Eigen::Index>, Rational> entries;

  std::size_t rank() const { return dims.size(); }
  std::size_t nnz() const { return entries.size(); }
  void add(const std::vector<Eigen::Index>& index, const Rational& v);
  Rational at(const std::vector<Eigen::Index>& index) const;
  bool operator==(const SparseTensor& o) const { return dims == o.dims && entries == o.entries; }
};

enum class VertexType { gauge, iota };

struct Vertex {
  VertexType type = VertexType::gauge;
  std::vector<Leg> legs;
  SparseTensor tensor;
  std::size_t iota_m = 0;     // uniting nodes only
  std::size_t iota_rank = 0;  // frame rank of the inputs
};

/// Legs (dual_spinor y'', vector m, spinor y) with entry (gamma^m)_{y'' y}.
Vertex make_vertex(const GammaSet& g);

inline constexpr std::size_t kMaxIotaRank = 3;

/// iota^(m) on a rank-r frame: m dual_monad legs over the 2^^(r-1) generators,
/// one monad leg over the 2^^r generators of the next frame. The entry at
/// (s_1..s_m, x) is the sign sorting s_1..s_m when x = {s_1..s_m}, else 0.
Vertex make_iota_node(std::size_t m, std::size_t rank);

struct Slot {
  std::size_t vertex = 0;
  std::size_t leg = 0;
  auto operator<=>(const Slot&) const = default;
};

struct Edge {
  Slot a, b;
};

struct VertexNetwork {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Slot> open;  // boundary order of the result

  /// Every slot is used exactly once (edge or open); edges join partner kinds of equal dimension.
  void validate() const;
};

struct ParityFinding {
  std::string kind;  // "iota_node", "leg_imbalance", "boundary"
  std::size_t vertex = 0;
  std::string message;
};

struct ParityReport {
  std::vector<ParityFinding> findings;
  bool ok() const { return findings.empty(); }
};

/// Mod-2 leg balance per vertex and on the boundary. Uniting nodes are always
/// reported: they send a set of any grade to a monad, so grade parity is not conserved.
ParityReport parity_check(const VertexNetwork& net);

struct ContractOptions {
  bool enforce_parity = false;  // throw on any parity finding
  /// Exhaustive order search up to this many tensors, greedy above.
  std::size_t exhaustive_limit = 4;
};

struct ContractionStep {
  std::size_t left, right;    // positions in the working list at that step
  std::size_t result_size;    // dense size of the intermediate
};

struct NetworkResult {
  SparseTensor tensor;
  std::vector<ContractionStep> plan;
};

NetworkResult contract(const VertexNetwork& net, const ContractOptions& options = {});

}  // namespace finq
