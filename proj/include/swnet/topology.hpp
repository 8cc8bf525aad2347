#pragma once

#include "swnet/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace swnet {

// Node placement in the square [0, area_side]^2. Node ids are the indices of
// `positions`, so they are dense and zero-based by construction.
struct Placement {
    std::vector<Position> positions;
    double area_side = 0.0;
    std::uint64_t rng_seed = 0;

    std::size_t size() const { return positions.size(); }

    friend bool operator==(const Placement&, const Placement&) = default;
};

struct ThinningParams {
    double r_b = 30.0;       // neighbor-counting radius (m)
    std::size_t l_min = 5;   // minimum neighbor count to survive
};

std::size_t node_count_for(double density, double area_side);

// Uniform placement of round(density * area_side^2) nodes.
// Throws std::invalid_argument if that rounds to zero nodes.
Placement place_uniform(double density, double area_side, std::uint64_t seed);

// Bettstetter thinning, one simultaneous pass: a node survives iff at least
// l_min other nodes of the input lie within distance r_b. Survivors keep their
// relative order and are re-indexed densely.
Placement thin(const Placement& p, const ThinningParams& params);

// Number of other nodes within `radius` of each node.
std::vector<std::size_t> neighbor_counts(const Placement& p, double radius);

// rho * A * (1 - Gamma(r_b, rho r_b^2 pi) / (r_b - 1)!), evaluated as written.
// The factorial is taken as Gamma(r_b). Throws std::overflow_error when
// Gamma(r_b) is not representable.
double expected_survivors(double density, double area, double r_b);

// Unit-disk graph: omni link between u != v iff 0 < |u - v| <= r.
MixedGraph build_omni_graph(const Placement& p, double r);

// CSV with header "id,x,y"; coordinates are written with 17 significant digits.
void write_placement_csv(std::ostream& os, const Placement& p);
Placement read_placement_csv(std::istream& is, double area_side);

} // namespace swnet
