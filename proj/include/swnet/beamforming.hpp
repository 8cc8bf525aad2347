#pragma once

#include "swnet/graph.hpp"
#include "swnet/self_organization.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace swnet {

enum class AntennaModel { sector, ula };

std::string to_string(AntennaModel model);
AntennaModel parse_antenna_model(const std::string& name);

struct AntennaConfig {
    AntennaModel model = AntennaModel::sector;
    int max_elements = 6;             // M
    double r = 30.0;                  // omni range (m)
    double carrier_frequency = 2.4e9; // Hz

    double wavelength() const { return 299792458.0 / carrier_frequency; }
    double element_spacing() const { return wavelength() / 2.0; }
};

struct SectorBeam {
    double length = 0.0; // m * r
    double width = 0.0;  // 2 pi / m^2
};

// Throws std::invalid_argument for m < 1.
SectorBeam sector_beam(int m, double r);

// Center of sector k among the m^2 equal sectors: (k + 1/2) * 2 pi / m^2.
double sector_boresight(int m, int k);

// Smallest absolute angle between two directions, in [0, pi].
double angular_offset(double a, double b);

// Bearing of `to` seen from `from`, in [0, 2 pi).
double bearing(const Position& from, const Position& to);

// Half-wavelength broadside ULA power pattern, normalized so that its mean over
// the circle is 1. The angle is measured from the boresight in the array's plane.
double ula_gain(int m, double angle_from_boresight);
double ula_peak_gain(int m);

struct Beam {
    NodeId owner = -1;
    int m = 0;
    int sector = 0;
    double boresight = 0.0;
    double length = 0.0;  // sector: m * r; ULA: r * sqrt(peak gain)
    double width = 0.0;   // angular size of one sector, 2 pi / m^2
    NodeId target = -1;
};

Beam make_beam(NodeId owner, int m, int sector, NodeId target, const AntennaConfig& cfg);

// Whether a single target lies inside the beam footprint. Closed boundaries;
// a target at the owner's own position is never covered.
bool covers(const Position& owner, const Beam& beam, const AntennaConfig& cfg, const Position& target);

// Indices of covered positions, skipping index `owner_index`.
std::vector<NodeId> coverage(const Position& owner, const Beam& beam, const AntennaConfig& cfg,
                             std::span<const Position> targets, NodeId owner_index = -1);

// Alignment rule: v is peripheral iff each region-internal neighbor is no
// farther from the region's centroid than v. Sets the peripheral role flag and
// returns the set in ascending order.
std::vector<NodeId> identify_peripherals(RegionState& rs, const MixedGraph& omni);

struct RcStarEntry {
    NodeId centroid = -1;
    int hops = 0;
    int sector = 0; // first sector achieving the minimum
    friend bool operator==(const RcStarEntry&, const RcStarEntry&) = default;
};

using RcStar = std::vector<RcStarEntry>; // sorted by centroid id

// Tries every non-forbidden sector of the m^2 lattice: p's out-links are
// replaced by the sector's coverage and a BFS truncated at rc.g_max() records
// the centroids reached. A sector is forbidden when a forbidden boresight lies
// within half a sector width of its own.
RcStar sweep_sectors(NodeId p, int m, const MixedGraph& g, const CentroidTable& rc, std::span<const NodeId> centroids,
                     std::span<const double> forbidden_boresights, const AntennaConfig& cfg);

enum class BeamOutcome { beam, remain_omni };
enum class BeamReason { new_centroid, farthest_known, too_close, no_candidate };

std::string to_string(BeamOutcome outcome);
std::string to_string(BeamReason reason);

struct BeamDecision {
    NodeId node = -1;
    BeamOutcome outcome = BeamOutcome::remain_omni;
    BeamReason reason = BeamReason::no_candidate;
    int m = 0;
    NodeId target = -1;
    std::optional<int> target_prior_hops; // omni hops from RC; empty = not known / infinite
    int sector = -1;
    std::optional<Beam> beam;
};

// Cohesion rule: new centroids (RC* - RC) first, other regions preferred, one
// picked uniformly at random; otherwise the farthest RC centroid some sector
// reaches. A target already within one omni hop is dropped.
BeamDecision choose_target(NodeId p, const CentroidTable& rc, const RcStar& rc_star, NodeId own_centroid,
                           std::uint64_t seed);

struct AckEvent {
    NodeId centroid = -1;
    NodeId peripheral = -1;
    double back_bearing = 0.0; // direction of the one-instant acknowledgment beam
};

struct CommitResult {
    MixedGraph graph;
    std::vector<BeamDecision> decisions;
    std::vector<AckEvent> acks;
};

// Processes the peripheral nodes of rs in ascending id. Each draws m from
// [2, M], avoids the boresights already committed by peripheral neighbors,
// sweeps, chooses, and on a beam outcome swaps its omni out-links for directed
// beam links. Acknowledgment back-beams are reported, not added as edges.
CommitResult commit_beams(const MixedGraph& omni, const RegionState& rs, const CentroidTable& rc,
                          const AntennaConfig& cfg, std::uint64_t seed);

// "node,outcome,reason,m,boresight_rad,target,target_prior_hops"
void write_decisions_csv(std::ostream& os, std::span<const BeamDecision> decisions);

} // namespace swnet
