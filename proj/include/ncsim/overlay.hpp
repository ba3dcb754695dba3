#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ncsim/linalg.hpp"
#include "ncsim/network.hpp"

namespace ncsim {

enum class RewireAlgo { Random, Algo1, Algo2, Algo3 };

struct OverlayParams {
  std::vector<int> cluster_sizes;
  int bottleneck_links = 1;  // links between consecutive clusters
  int min_degree = 2;
  int max_degree = 5;
  double avg_degree = 3.5;
  // When positive, the links crossing each cluster boundary share this many
  // packets per slot in total (the physical-bottleneck model); zero means
  // plain unit-capacity links.
  double shared_bottleneck_capacity = 0.0;
};

struct SessionConfig {
  OverlayParams topo;
  int n = 50;
  std::uint32_t q = 256;
  std::uint64_t seed = 0;
  int horizon = 2000;
  RewireAlgo algo = RewireAlgo::Random;

  double rewire_prob = 8.0 / 500.0;  // Random: per received packet
  int k_noninnovative = 10;          // Algo1 counter threshold
  int check_every_packets = 4;       // Algo1 cadence (received packets)
  double ratio_threshold = 1.0;      // Algo2/3 intersection-rate vs joint-rate
  int check_every_slots = 4;         // Algo2/3 cadence and window
  int vote_threshold = 2;            // Algo2 Δ
  int vote_threshold_algo3 = 5;      // Algo3 Δ
  int cluster_radius = 7;            // Algo3 registrat clustering radius
  int rewires_per_cluster = 3;       // Algo3: the registrat rewires a small
                                     // number of nodes per cluster per round
  int waiting_dimension = 2;

  // When true the metrics include intra/inter-cluster subspace distances
  // sampled mid-session (ground-truth cluster labels).
  bool sample_cluster_distances = false;
};

struct SessionMetrics {
  bool terminated = false;  // every peer decoded within the horizon
  int slots = 0;
  double avg_collection_time = 0;  // mean over peers of decode - first packet
  long long total_rewirings = 0;
  long long rewire_requests = 0;
  int last_rewire_slot = 0;
  double intra_cluster_ds = 0;  // sampled when requested
  double inter_cluster_ds = 0;
  bool final_connected = false;
  int final_min_degree = 0;
  int final_max_degree = 0;

  nlohmann::json to_json() const;
};

// Undirected overlay graph (unit-capacity bidirectional links).
struct OverlayGraph {
  int peers = 0;
  std::vector<std::vector<int>> adj;  // sorted neighbor lists
  std::vector<int> cluster_of;
  std::vector<std::pair<int, int>> bottlenecks;  // inter-cluster links

  bool connected() const;
  double average_degree() const;
};

// Clustered overlay honoring the degree bounds; consecutive clusters are
// joined only by the designated bottleneck links.
OverlayGraph make_clustered_overlay(const OverlayParams& p, Rng& rng);

// Greedy radius partition of reported subspaces: repeatedly seed a cluster
// with the lowest unassigned peer and absorb everything within the radius.
std::vector<std::vector<int>> registrat_cluster(
    const std::vector<std::pair<int, RowSpace>>& reported, int radius);

// Decision criteria, exposed for direct testing.
std::vector<int> decide_algo1(const std::vector<std::pair<int, int>>& noninnovative_per_neighbor,
                              int k);
bool algo2_pair_vote(int joint_rate, int intersect_rate, double threshold);
bool decide_random(double p, Rng& rng);

SessionMetrics run_session(const SessionConfig& cfg);

}  // namespace ncsim
