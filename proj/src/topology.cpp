#include "swnet/topology.hpp"

#include "swnet/rng.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace swnet {

namespace {

double squared_distance(const Position& a, const Position& b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

} // namespace

std::size_t node_count_for(double density, double area_side)
{
    if (!(density > 0.0) || !(area_side > 0.0))
        throw std::invalid_argument("density and area side must be positive");
    return static_cast<std::size_t>(std::llround(density * area_side * area_side));
}

Placement place_uniform(double density, double area_side, std::uint64_t seed)
{
    const std::size_t n = node_count_for(density, area_side);
    if (n == 0)
        throw std::invalid_argument("density * area rounds to zero nodes");
    Placement p;
    p.area_side = area_side;
    p.rng_seed = seed;
    p.positions.reserve(n);
    Rng rng = make_rng(seed, Stream::placement);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = uniform01(rng) * area_side;
        const double y = uniform01(rng) * area_side;
        p.positions.push_back({x, y});
    }
    return p;
}

std::vector<std::size_t> neighbor_counts(const Placement& p, double radius)
{
    const std::size_t n = p.size();
    const double r2 = radius * radius;
    std::vector<std::size_t> counts(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (squared_distance(p.positions[i], p.positions[j]) <= r2) {
                ++counts[i];
                ++counts[j];
            }
    return counts;
}

Placement thin(const Placement& p, const ThinningParams& params)
{
    if (!(params.r_b > 0.0))
        throw std::invalid_argument("thinning radius must be positive");
    const auto counts = neighbor_counts(p, params.r_b);
    Placement out;
    out.area_side = p.area_side;
    out.rng_seed = p.rng_seed;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (counts[i] >= params.l_min)
            out.positions.push_back(p.positions[i]);
    return out;
}

double expected_survivors(double density, double area, double r_b)
{
    if (!(density > 0.0) || !(area > 0.0) || !(r_b > 0.0))
        throw std::invalid_argument("density, area and r_b must be positive");
    const double mean_neighbors = density * r_b * r_b * std::numbers::pi;
    double factorial = 0.0;
    try {
        factorial = boost::math::tgamma(r_b);
    } catch (const std::overflow_error&) {
        throw std::overflow_error("(r_b - 1)! overflows a double");
    }
    if (!std::isfinite(factorial))
        throw std::overflow_error("(r_b - 1)! overflows a double");
    // 1 - Gamma(s, x) / Gamma(s) is the regularized lower incomplete gamma P(s, x);
    // evaluating it directly avoids cancellation when the ratio is close to one.
    return density * area * boost::math::gamma_p(r_b, mean_neighbors);
}

MixedGraph build_omni_graph(const Placement& p, double r)
{
    if (!(r > 0.0))
        throw std::invalid_argument("transmission radius must be positive");
    const std::size_t n = p.size();
    const double r2 = r * r;
    MixedGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d2 = squared_distance(p.positions[i], p.positions[j]);
            if (d2 > 0.0 && d2 <= r2)
                g.add_omni_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
    g.set_positions(p.positions);
    return g;
}

void write_placement_csv(std::ostream& os, const Placement& p)
{
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << "id,x,y\n" << std::setprecision(17);
    for (std::size_t i = 0; i < p.size(); ++i)
        os << i << ',' << p.positions[i].x << ',' << p.positions[i].y << '\n';
    os.flags(flags);
    os.precision(precision);
}

Placement read_placement_csv(std::istream& is, double area_side)
{
    std::string line;
    if (!std::getline(is, line) || line != "id,x,y")
        throw std::runtime_error("placement CSV: expected header 'id,x,y'");
    Placement p;
    p.area_side = area_side;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::size_t id = 0;
        char c1 = 0, c2 = 0;
        Position pos;
        if (!(ls >> id >> c1 >> pos.x >> c2 >> pos.y) || c1 != ',' || c2 != ',')
            throw std::runtime_error("placement CSV: malformed row '" + line + "'");
        if (id != p.size())
            throw std::runtime_error("placement CSV: ids must be dense and zero-based");
        if (pos.x < 0.0 || pos.y < 0.0 || pos.x > area_side || pos.y > area_side)
            throw std::runtime_error("placement CSV: coordinate outside the area");
        p.positions.push_back(pos);
    }
    return p;
}

} // namespace swnet
