#include "swnet/beamforming.hpp"

#include "swnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace swnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

} // namespace

std::string to_string(AntennaModel model)
{
    return model == AntennaModel::sector ? "sector" : "ula";
}

AntennaModel parse_antenna_model(const std::string& name)
{
    if (name == "sector")
        return AntennaModel::sector;
    if (name == "ula")
        return AntennaModel::ula;
    throw std::invalid_argument("unknown antenna model '" + name + "' (expected sector or ula)");
}

SectorBeam sector_beam(int m, double r)
{
    if (m < 1)
        throw std::invalid_argument("antenna element count must be at least 1");
    const double md = static_cast<double>(m);
    return {md * r, kTwoPi / (md * md)};
}

double sector_boresight(int m, int k)
{
    const double sectors = static_cast<double>(m) * static_cast<double>(m);
    return (static_cast<double>(k) + 0.5) * kTwoPi / sectors;
}

double angular_offset(double a, double b)
{
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return d > std::numbers::pi ? kTwoPi - d : d;
}

double bearing(const Position& from, const Position& to)
{
    const double a = std::atan2(to.y - from.y, to.x - from.x);
    return a < 0.0 ? a + kTwoPi : a;
}

namespace {

// Mean of the unnormalized array factor over the circle:
// (1/m^2) [m + 2 sum_{n=1}^{m-1} (m - n) J0(n pi)].
double ula_mean_array_factor(int m)
{
    double sum = static_cast<double>(m);
    for (int n = 1; n < m; ++n)
        sum += 2.0 * static_cast<double>(m - n) * std::cyl_bessel_j(0.0, n * std::numbers::pi);
    return sum / (static_cast<double>(m) * static_cast<double>(m));
}

double ula_normalizer(int m)
{
    static std::mutex mutex;
    static std::map<int, double> cache;
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.try_emplace(m, 0.0);
    if (inserted)
        it->second = ula_mean_array_factor(m);
    return it->second;
}

} // namespace

double ula_gain(int m, double angle_from_boresight)
{
    if (m < 2)
        throw std::invalid_argument("a ULA needs at least 2 elements");
    // Broadside array: the angle from the array axis is pi/2 - angle_from_boresight.
    const double psi = std::numbers::pi * std::sin(angle_from_boresight);
    double af = static_cast<double>(m);
    for (int n = 1; n < m; ++n)
        af += 2.0 * static_cast<double>(m - n) * std::cos(n * psi);
    af /= static_cast<double>(m) * static_cast<double>(m);
    return std::max(0.0, af) / ula_normalizer(m);
}

double ula_peak_gain(int m)
{
    return ula_gain(m, 0.0);
}

Beam make_beam(NodeId owner, int m, int sector, NodeId target, const AntennaConfig& cfg)
{
    const auto sb = sector_beam(m, cfg.r);
    Beam b;
    b.owner = owner;
    b.m = m;
    b.sector = sector;
    b.boresight = sector_boresight(m, sector);
    b.width = sb.width;
    b.length = cfg.model == AntennaModel::sector ? sb.length : cfg.r * std::sqrt(ula_peak_gain(m));
    b.target = target;
    return b;
}

bool covers(const Position& owner, const Beam& beam, const AntennaConfig& cfg, const Position& target)
{
    const double dx = target.x - owner.x;
    const double dy = target.y - owner.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 <= 0.0)
        return false;
    const double offset = angular_offset(bearing(owner, target), beam.boresight);
    if (cfg.model == AntennaModel::sector)
        return d2 <= beam.length * beam.length && offset <= beam.width / 2.0 + kAngleSlack;
    const double reach2 = cfg.r * cfg.r * ula_gain(beam.m, offset);
    return d2 <= reach2;
}

std::vector<NodeId> coverage(const Position& owner, const Beam& beam, const AntennaConfig& cfg,
                             std::span<const Position> targets, NodeId owner_index)
{
    std::vector<NodeId> out;
    for (NodeId i = 0; i < static_cast<NodeId>(targets.size()); ++i)
        if (i != owner_index && covers(owner, beam, cfg, targets[i]))
            out.push_back(i);
    return out;
}

std::vector<NodeId> identify_peripherals(RegionState& rs, const MixedGraph& omni)
{
    const Adjacency adj(omni, Adjacency::Direction::undirected);
    std::vector<NodeId> peripherals;
    for (NodeId v = 0; v < static_cast<NodeId>(rs.size()); ++v) {
        const auto& self = rs.nodes[v];
        bool outermost = true;
        for (NodeId w : adj.neighbors(v)) {
            const auto& other = rs.nodes[w];
            if (other.region == self.region && other.hop > self.hop) {
                outermost = false;
                break;
            }
        }
        if (outermost) {
            rs.nodes[v].role |= kPeripheral;
            peripherals.push_back(v);
        } else {
            rs.nodes[v].role &= static_cast<std::uint8_t>(~kPeripheral);
        }
    }
    return peripherals;
}

namespace {

bool sector_forbidden(int m, int k, std::span<const double> forbidden)
{
    const double half_width = sector_beam(m, 1.0).width / 2.0;
    const double b = sector_boresight(m, k);
    return std::any_of(forbidden.begin(), forbidden.end(),
                       [&](double f) { return angular_offset(b, f) <= half_width + kAngleSlack; });
}

} // namespace

RcStar sweep_sectors(NodeId p, int m, const MixedGraph& g, const CentroidTable& rc, std::span<const NodeId> centroids,
                     std::span<const double> forbidden_boresights, const AntennaConfig& cfg)
{
    if (!g.valid(p))
        throw std::out_of_range("peripheral node out of range");
    if (!g.has_positions())
        throw std::invalid_argument("sector sweep needs node positions");
    const auto n = static_cast<NodeId>(g.node_count());
    const Adjacency adj(g, Adjacency::Direction::forward);
    const int g_max = rc.g_max();
    const auto& pos = g.positions();

    std::vector<char> is_centroid(n, 0);
    for (NodeId c : centroids)
        is_centroid.at(c) = 1;

    std::map<NodeId, RcStarEntry> best;
    std::vector<int> dist(n, kUnreachable);
    std::vector<NodeId> queue;
    queue.reserve(n);

    const int sectors = m * m;
    for (int k = 0; k < sectors; ++k) {
        if (sector_forbidden(m, k, forbidden_boresights))
            continue;
        const Beam beam = make_beam(p, m, k, -1, cfg);
        for (NodeId v : queue)
            dist[v] = kUnreachable;
        queue.clear();
        // p is never re-expanded: its out-links in the tentative graph are the beam.
        dist[p] = 0;
        queue.push_back(p);
        for (NodeId v : coverage(pos[p], beam, cfg, pos, p)) {
            dist[v] = 1;
            queue.push_back(v);
        }
        for (std::size_t head = 1; head < queue.size(); ++head) {
            const NodeId u = queue[head];
            if (is_centroid[u]) {
                auto [it, inserted] = best.try_emplace(u, RcStarEntry{u, dist[u], k});
                if (!inserted && dist[u] < it->second.hops)
                    it->second = RcStarEntry{u, dist[u], k};
            }
            if (dist[u] >= g_max)
                continue;
            for (NodeId w : adj.neighbors(u))
                if (dist[w] == kUnreachable) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
        }
    }
    RcStar out;
    out.reserve(best.size());
    for (const auto& [c, e] : best)
        out.push_back(e);
    return out;
}

std::string to_string(BeamOutcome outcome)
{
    return outcome == BeamOutcome::beam ? "beam" : "remain_omni";
}

std::string to_string(BeamReason reason)
{
    switch (reason) {
    case BeamReason::new_centroid: return "new_centroid";
    case BeamReason::farthest_known: return "farthest_known";
    case BeamReason::too_close: return "too_close";
    case BeamReason::no_candidate: return "no_candidate";
    }
    return "unknown";
}

BeamDecision choose_target(NodeId p, const CentroidTable& rc, const RcStar& rc_star, NodeId own_centroid,
                           std::uint64_t seed)
{
    BeamDecision d;
    d.node = p;

    std::vector<const RcStarEntry*> fresh, fresh_foreign;
    for (const auto& e : rc_star)
        if (!rc.hops(p, e.centroid)) {
            fresh.push_back(&e);
            if (e.centroid != own_centroid)
                fresh_foreign.push_back(&e);
        }

    if (!fresh.empty()) {
        const auto& pool = fresh_foreign.empty() ? fresh : fresh_foreign;
        Rng rng = make_rng(seed, Stream::target_choice, static_cast<std::uint64_t>(p));
        const auto* pick = pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(pool.size()) - 1))];
        d.outcome = BeamOutcome::beam;
        d.reason = BeamReason::new_centroid;
        d.target = pick->centroid;
        d.sector = pick->sector;
        return d;
    }

    const RcStarEntry* farthest = nullptr;
    int farthest_hops = -1;
    for (const auto& e : rc_star) {
        const int h = *rc.hops(p, e.centroid);
        if (h > farthest_hops) { // rc_star ascends by id, so ties keep the lower id
            farthest = &e;
            farthest_hops = h;
        }
    }
    if (farthest == nullptr) {
        d.reason = BeamReason::no_candidate;
        return d;
    }
    d.target = farthest->centroid;
    d.sector = farthest->sector;
    d.target_prior_hops = farthest_hops;
    if (farthest_hops < 2) {
        d.reason = BeamReason::too_close;
        return d;
    }
    d.outcome = BeamOutcome::beam;
    d.reason = BeamReason::farthest_known;
    return d;
}

CommitResult commit_beams(const MixedGraph& omni, const RegionState& rs, const CentroidTable& rc,
                          const AntennaConfig& cfg, std::uint64_t seed)
{
    if (cfg.max_elements < 2)
        throw std::invalid_argument("beamforming needs M >= 2");
    CommitResult result{omni, {}, {}};
    const auto n = static_cast<NodeId>(omni.node_count());
    if (n == 0)
        return result;
    if (!omni.has_positions())
        throw std::invalid_argument("beamforming needs node positions");
    const Adjacency omni_adj(omni, Adjacency::Direction::undirected);
    const auto& pos = omni.positions();

    std::vector<NodeId> centroids;
    for (NodeId v = 0; v < n; ++v)
        if (rs.nodes.at(v).is_centroid())
            centroids.push_back(v);

    std::vector<std::optional<double>> committed(n);
    for (NodeId p = 0; p < n; ++p) {
        if (!rs.nodes[p].is_peripheral())
            continue;
        Rng rng = make_rng(seed, Stream::antenna_elements, static_cast<std::uint64_t>(p));
        const int m = static_cast<int>(uniform_int(rng, 2, cfg.max_elements));

        std::vector<double> forbidden;
        for (NodeId w : omni_adj.neighbors(p))
            if (rs.nodes[w].is_peripheral() && committed[w])
                forbidden.push_back(*committed[w]);

        const RcStar rc_star = sweep_sectors(p, m, result.graph, rc, centroids, forbidden, cfg);
        BeamDecision d = choose_target(p, rc, rc_star, rs.nodes[p].region, seed);
        d.m = m;
        if (d.outcome == BeamOutcome::beam) {
            Beam beam = make_beam(p, m, d.sector, d.target, cfg);
            const auto covered = coverage(pos[p], beam, cfg, pos, p);
            result.graph.silence_omni(p);
            for (NodeId v : covered)
                result.graph.add_beam_edge(p, v);
            committed[p] = beam.boresight;
            const bool far = !d.target_prior_hops || *d.target_prior_hops > 1;
            if (far && std::binary_search(covered.begin(), covered.end(), d.target))
                result.acks.push_back({d.target, p, bearing(pos[d.target], pos[p])});
            d.beam = beam;
        }
        result.decisions.push_back(std::move(d));
    }
    return result;
}

void write_decisions_csv(std::ostream& os, std::span<const BeamDecision> decisions)
{
    const auto precision = os.precision();
    os << "node,outcome,reason,m,boresight_rad,target,target_prior_hops\n" << std::setprecision(17);
    for (const auto& d : decisions) {
        os << d.node << ',' << to_string(d.outcome) << ',' << to_string(d.reason) << ',' << d.m << ',';
        if (d.beam)
            os << d.beam->boresight;
        os << ',';
        if (d.target >= 0)
            os << d.target;
        os << ',';
        if (d.target_prior_hops)
            os << *d.target_prior_hops;
        else if (d.target >= 0)
            os << "inf";
        os << '\n';
    }
    os.precision(precision);
}

} // namespace swnet
