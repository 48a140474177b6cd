// Constrained Delaunay triangulation of a simple polygon followed by
// Ruppert-style Delaunay refinement.
//
// Only the interior of the polygon is ever triangulated: the initial
// triangulation comes from ear clipping plus Lawson flips, so every constraint
// is a boundary edge (neighbour -1) and cavities can never leak outside.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <unordered_map>
#include <vector>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/mesh.hpp"

namespace eigenbranch {

namespace {

constexpr double kMinAngleDeg = 20.0;
constexpr double kLadderAngleDeg = 45.0;
// Size bound on the circumradius; keeps every edge below 2 * kSizeFactor * h.
constexpr double kSizeFactor = 0.7;

struct Tri {
    std::array<int, 3> v;
    std::array<int, 3> n;    // neighbour across the edge opposite v[i]; -1 on the boundary
    std::array<int, 3> seg;  // input segment owning that edge when it is a boundary edge
    bool alive = true;
};

std::uint64_t edge_key(int a, int b)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

double incircle_det(Vec2 a, Vec2 b, Vec2 c, Vec2 p, double& perm)
{
    double adx = a.x - p.x, ady = a.y - p.y;
    double bdx = b.x - p.x, bdy = b.y - p.y;
    double cdx = c.x - p.x, cdy = c.y - p.y;
    double al = adx * adx + ady * ady, bl = bdx * bdx + bdy * bdy, cl = cdx * cdx + cdy * cdy;
    double t1 = bdx * cdy - cdx * bdy, t2 = cdx * ady - adx * cdy, t3 = adx * bdy - bdx * ady;
    perm = al * (std::abs(bdx * cdy) + std::abs(cdx * bdy)) + bl * (std::abs(cdx * ady) + std::abs(adx * cdy)) +
           cl * (std::abs(adx * bdy) + std::abs(bdx * ady));
    return al * t1 + bl * t2 + cl * t3;
}

Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c)
{
    Vec2 ba = b - a, ca = c - a;
    double d = 2 * cross(ba, ca);
    double bl = dot(ba, ba), cl = dot(ca, ca);
    return {a.x + (ca.y * bl - ba.y * cl) / d, a.y + (ba.x * cl - ca.x * bl) / d};
}

class Refiner {
public:
    Refiner(const PlanarDomain& dom, double h) : dom_(dom), h_(h) {}

    Mesh run();

private:
    // --- construction
    void ear_clip();
    void build_adjacency(const std::vector<std::array<int, 3>>& tris);
    void lawson();
    bool flip(int t, int i);
    void ladder_corners();

    // --- refinement
    void refine();
    bool is_bad(int t) const;
    bool touches_apex(int t) const;
    bool needs_split(int t, int k) const;
    bool split_protected(int a, int b) const;
    void split_subsegment(int t, int k);
    void split_segment_at(int s, Vec2 q);
    void queue_new(const std::vector<int>& created);

    // --- primitives
    struct WalkResult {
        int tri;
        int blocked_edge;  // -1 when `tri` contains the point
    };
    WalkResult walk(int start, Vec2 p);
    std::vector<int> cavity(Vec2 p, int start, int split_tri, int split_k);
    std::vector<int> insert(Vec2 p, int start, int split_tri, int split_k, int seg);
    int new_tri(std::array<int, 3> v);
    void set_bedge(int t, int k);
    double orient_eps(Vec2 a, Vec2 b, Vec2 c) const;
    Vec2 P(int v) const { return pts_[v]; }

    const PlanarDomain& dom_;
    double h_;
    int n_input_ = 0;
    std::vector<Vec2> pts_;
    std::vector<Tri> tris_;
    std::vector<int> free_;
    std::vector<bool> apex_;                  // input corner pre-split as a ladder
    std::unordered_map<std::uint64_t, int> bedge_;  // directed boundary edge -> triangle
    std::vector<std::map<double, int>> seg_verts_;  // per input segment: parameter -> vertex
    std::vector<int> mark_;
    int stamp_ = 0;
    std::uint32_t rng_ = 12345;

    std::deque<std::array<int, 2>> seg_queue_;
    std::deque<std::pair<int, std::array<int, 3>>> bad_queue_;
};

double Refiner::orient_eps(Vec2 a, Vec2 b, Vec2 c) const
{
    return 1e-12 * norm(b - a) * norm(c - a);
}

int Refiner::new_tri(std::array<int, 3> v)
{
    Tri t{v, {-1, -1, -1}, {-1, -1, -1}, true};
    if (!free_.empty()) {
        int id = free_.back();
        free_.pop_back();
        tris_[id] = t;
        mark_[id] = 0;
        return id;
    }
    tris_.push_back(t);
    mark_.push_back(0);
    return static_cast<int>(tris_.size()) - 1;
}

void Refiner::set_bedge(int t, int k)
{
    const auto& T = tris_[t];
    if (T.n[k] == -1) bedge_[edge_key(T.v[(k + 1) % 3], T.v[(k + 2) % 3])] = t;
}

// ---------------------------------------------------------------------------
// Initial triangulation

void Refiner::ear_clip()
{
    const int n = n_input_;
    std::vector<int> prev(n), next(n);
    for (int i = 0; i < n; ++i) {
        prev[i] = (i + n - 1) % n;
        next[i] = (i + 1) % n;
    }
    std::vector<bool> removed(n, false);
    auto convex = [&](int i) {
        Vec2 a = P(prev[i]), b = P(i), c = P(next[i]);
        return orient(a, b, c) > orient_eps(a, b, c);
    };
    std::vector<int> concave;
    for (int i = 0; i < n; ++i)
        if (!convex(i)) concave.push_back(i);

    auto is_ear = [&](int i) {
        if (!convex(i)) return false;
        int a = prev[i], c = next[i];
        Vec2 pa = P(a), pb = P(i), pc = P(c);
        for (int r : concave) {
            if (removed[r] || r == a || r == i || r == c) continue;
            Vec2 q = P(r);
            if (orient(pa, pb, q) >= -orient_eps(pa, pb, q) && orient(pb, pc, q) >= -orient_eps(pb, pc, q) &&
                orient(pc, pa, q) >= -orient_eps(pc, pa, q))
                return false;
        }
        return true;
    };

    std::vector<std::array<int, 3>> out;
    out.reserve(n);
    int remaining = n;
    int cur = 0;
    int since_clip = 0;
    while (remaining > 3) {
        if (is_ear(cur)) {
            int a = prev[cur], c = next[cur];
            out.push_back({a, cur, c});
            removed[cur] = true;
            next[a] = c;
            prev[c] = a;
            --remaining;
            since_clip = 0;
            if (out.size() % 64 == 0)
                std::erase_if(concave, [&](int r) { return removed[r] || convex(r); });
            cur = a;
        } else {
            cur = next[cur];
            if (++since_clip > remaining + 1)
                throw MeshingError("ear clipping found no ear (degenerate polygon)", P(cur).x, P(cur).y);
        }
    }
    out.push_back({prev[cur], cur, next[cur]});
    for (auto& t : out) {
        if (!(orient(P(t[0]), P(t[1]), P(t[2])) > 0))
            throw MeshingError("degenerate ear (collinear boundary vertices)", P(t[1]).x, P(t[1]).y);
    }
    build_adjacency(out);
}

void Refiner::build_adjacency(const std::vector<std::array<int, 3>>& tris)
{
    std::unordered_map<std::uint64_t, std::pair<int, int>> half;
    half.reserve(tris.size() * 3);
    for (const auto& v : tris) {
        int id = new_tri(v);
        for (int k = 0; k < 3; ++k) half[edge_key(v[(k + 1) % 3], v[(k + 2) % 3])] = {id, k};
    }
    const int n = n_input_;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
        auto& T = tris_[t];
        for (int k = 0; k < 3; ++k) {
            int a = T.v[(k + 1) % 3], b = T.v[(k + 2) % 3];
            auto it = half.find(edge_key(b, a));
            if (it != half.end()) {
                T.n[k] = it->second.first;
            } else {
                if (b != (a + 1) % n) throw MeshingError("initial triangulation has a stray boundary edge", P(a).x, P(a).y);
                T.seg[k] = a;
                set_bedge(t, k);
            }
        }
    }
}

bool Refiner::flip(int t, int i)
{
    int u = tris_[t].n[i];
    if (u < 0) return false;
    Tri T = tris_[t], U = tris_[u];
    int p = T.v[i], a = T.v[(i + 1) % 3], b = T.v[(i + 2) % 3];
    int j = 0;
    while (U.v[j] == a || U.v[j] == b) ++j;
    int q = U.v[j];
    if (orient(P(p), P(a), P(q)) <= 0 || orient(P(q), P(b), P(p)) <= 0) return false;

    int ia = (i + 1) % 3, ib = (i + 2) % 3;        // in T: opposite a -> edge (b,p); opposite b -> edge (p,a)
    int ub = -1, ua = -1;                            // in U: opposite b -> edge (a,q); opposite a -> edge (q,b)
    for (int k = 0; k < 3; ++k) {
        if (U.v[k] == b) ub = k;
        if (U.v[k] == a) ua = k;
    }
    int n_bp = T.n[ia], s_bp = T.seg[ia];
    int n_pa = T.n[ib], s_pa = T.seg[ib];
    int n_aq = U.n[ub], s_aq = U.seg[ub];
    int n_qb = U.n[ua], s_qb = U.seg[ua];

    tris_[t].v = {p, a, q};
    tris_[t].n = {n_aq, u, n_pa};
    tris_[t].seg = {s_aq, -1, s_pa};
    tris_[u].v = {q, b, p};
    tris_[u].n = {n_bp, t, n_qb};
    tris_[u].seg = {s_bp, -1, s_qb};

    auto repoint = [&](int nb, int from, int to) {
        if (nb < 0) return;
        for (int k = 0; k < 3; ++k)
            if (tris_[nb].n[k] == from) tris_[nb].n[k] = to;
    };
    repoint(n_aq, u, t);
    repoint(n_bp, t, u);
    for (int k = 0; k < 3; ++k) {
        set_bedge(t, k);
        set_bedge(u, k);
    }
    return true;
}

void Refiner::lawson()
{
    std::vector<std::pair<int, int>> stack;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
        for (int k = 0; k < 3; ++k)
            if (tris_[t].n[k] >= 0) stack.push_back({t, k});
    std::size_t guard = 0, limit = 200 * tris_.size() + 1000;
    while (!stack.empty()) {
        if (++guard > limit) throw MeshingError("edge flipping did not terminate", P(0).x, P(0).y);
        auto [t, k] = stack.back();
        stack.pop_back();
        int u = tris_[t].n[k];
        if (u < 0) continue;
        const auto& U = tris_[u];
        int q = -1;
        for (int j = 0; j < 3; ++j)
            if (U.v[j] != tris_[t].v[(k + 1) % 3] && U.v[j] != tris_[t].v[(k + 2) % 3]) q = U.v[j];
        double perm;
        const auto& T = tris_[t];
        double det = incircle_det(P(T.v[0]), P(T.v[1]), P(T.v[2]), P(q), perm);
        if (det > 1e-10 * perm && flip(t, k)) {
            for (int j = 0; j < 3; ++j) {
                stack.push_back({t, j});
                stack.push_back({u, j});
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Point location and insertion

Refiner::WalkResult Refiner::walk(int start, Vec2 p)
{
    int t = start;
    const std::size_t limit = 4 * tris_.size() + 100;
    for (std::size_t it = 0; it < limit; ++it) {
        const auto& T = tris_[t];
        rng_ = rng_ * 1664525u + 1013904223u;
        int rot = static_cast<int>((rng_ >> 16) % 3);
        bool moved = false;
        for (int j = 0; j < 3; ++j) {
            int k = (j + rot) % 3;
            Vec2 a = P(T.v[(k + 1) % 3]), b = P(T.v[(k + 2) % 3]);
            if (orient(a, b, p) < -orient_eps(a, b, p)) {
                if (T.n[k] < 0) return {t, k};
                t = T.n[k];
                moved = true;
                break;
            }
        }
        if (!moved) return {t, -1};
    }
    throw MeshingError("point location did not terminate", p.x, p.y);
}

std::vector<int> Refiner::cavity(Vec2 p, int start, int split_tri, int split_k)
{
    std::vector<int> banned;
    for (;;) {
        ++stamp_;
        for (int b : banned) mark_[b] = -stamp_;
        std::vector<int> cav{start};
        mark_[start] = stamp_;
        for (std::size_t i = 0; i < cav.size(); ++i) {
            const auto& T = tris_[cav[i]];
            for (int k = 0; k < 3; ++k) {
                int nb = T.n[k];
                if (nb < 0 || mark_[nb] == stamp_ || mark_[nb] == -stamp_) continue;
                const auto& N = tris_[nb];
                double perm;
                double det = incircle_det(P(N.v[0]), P(N.v[1]), P(N.v[2]), p, perm);
                if (det > 1e-12 * perm) {
                    mark_[nb] = stamp_;
                    cav.push_back(nb);
                }
            }
        }
        // The cavity must be star-shaped from p; drop triangles that break that.
        int offender = -1;
        for (int t : cav) {
            const auto& T = tris_[t];
            for (int k = 0; k < 3; ++k) {
                int nb = T.n[k];
                if (nb >= 0 && mark_[nb] == stamp_) continue;
                if (t == split_tri && k == split_k) continue;
                Vec2 a = P(T.v[(k + 1) % 3]), b = P(T.v[(k + 2) % 3]);
                if (orient(a, b, p) <= orient_eps(a, b, p) && t != start) {
                    offender = t;
                    break;
                }
            }
            if (offender >= 0) break;
        }
        if (offender < 0) return cav;
        banned.push_back(offender);
    }
}

std::vector<int> Refiner::insert(Vec2 p, int start, int split_tri, int split_k, int seg)
{
    auto cav = cavity(p, start, split_tri, split_k);
    const int pid = static_cast<int>(pts_.size());
    pts_.push_back(p);

    struct Rim {
        int a, b, outer, seg;
    };
    std::vector<Rim> rim;
    for (int t : cav) {
        const auto& T = tris_[t];
        for (int k = 0; k < 3; ++k) {
            int nb = T.n[k];
            if (nb >= 0 && mark_[nb] == stamp_) continue;
            if (t == split_tri && k == split_k) continue;
            rim.push_back({T.v[(k + 1) % 3], T.v[(k + 2) % 3], nb, T.seg[k]});
        }
    }
    if (split_tri >= 0)
        bedge_.erase(edge_key(tris_[split_tri].v[(split_k + 1) % 3], tris_[split_tri].v[(split_k + 2) % 3]));
    for (int t : cav) {
        tris_[t].alive = false;
        free_.push_back(t);
    }

    std::unordered_map<int, int> starts_at, ends_at;  // rim vertex -> new triangle
    std::vector<int> created;
    created.reserve(rim.size());
    for (const auto& r : rim) {
        int id = new_tri({r.a, r.b, pid});
        auto& T = tris_[id];
        T.n[2] = r.outer;
        T.seg[2] = r.seg;
        if (r.outer >= 0) {
            auto& O = tris_[r.outer];
            for (int k = 0; k < 3; ++k)
                if (O.v[(k + 1) % 3] == r.b && O.v[(k + 2) % 3] == r.a) O.n[k] = id;
        }
        set_bedge(id, 2);
        starts_at[r.a] = id;
        ends_at[r.b] = id;
        created.push_back(id);
    }
    for (int id : created) {
        auto& T = tris_[id];
        int a = T.v[0], b = T.v[1];
        // Edge (b, p) is opposite a; its twin (p, b) belongs to the triangle starting at b.
        auto nb = starts_at.find(b);
        if (nb != starts_at.end()) {
            T.n[0] = nb->second;
        } else {
            T.n[0] = -1;
            T.seg[0] = seg;
            set_bedge(id, 0);
        }
        auto na = ends_at.find(a);
        if (na != ends_at.end()) {
            T.n[1] = na->second;
        } else {
            T.n[1] = -1;
            T.seg[1] = seg;
            set_bedge(id, 1);
        }
    }
    return created;
}

// ---------------------------------------------------------------------------
// Segment handling

void Refiner::split_segment_at(int s, Vec2 q)
{
    Vec2 A = P(s), B = P((s + 1) % n_input_);
    double t = dot(q - A, B - A) / dot(B - A, B - A);
    auto& sv = seg_verts_[s];
    auto hi = sv.upper_bound(t);
    auto lo = std::prev(hi);
    int a = lo->second, b = hi->second;
    auto it = bedge_.find(edge_key(a, b));
    if (it == bedge_.end()) throw MeshingError("boundary subsegment lost", q.x, q.y);
    int tri = it->second;
    int k = 0;
    while (tris_[tri].v[k] == a || tris_[tri].v[k] == b) ++k;
    auto created = insert(q, tri, tri, k, s);
    sv[t] = static_cast<int>(pts_.size()) - 1;
    queue_new(created);
}

void Refiner::split_subsegment(int t, int k)
{
    const auto& T = tris_[t];
    int a = T.v[(k + 1) % 3], b = T.v[(k + 2) % 3];
    int s = T.seg[k];
    split_segment_at(s, (P(a) + P(b)) * 0.5);
}

bool Refiner::split_protected(int a, int b) const
{
    return (a < n_input_ && apex_[a]) || (b < n_input_ && apex_[b]);
}

bool Refiner::needs_split(int t, int k) const
{
    const auto& T = tris_[t];
    int a = T.v[(k + 1) % 3], b = T.v[(k + 2) % 3];
    if (split_protected(a, b)) return false;
    Vec2 pa = P(a), pb = P(b), pp = P(T.v[k]);
    if (distance(pa, pb) > h_ * (1 + 1e-9)) return true;
    // Encroached: the opposite vertex sees the subsegment at an obtuse angle.
    Vec2 u = pa - pp, v = pb - pp;
    return dot(u, v) < -1e-12 * norm(u) * norm(v);
}

void Refiner::ladder_corners()
{
    const int n = n_input_;
    apex_.assign(n, false);
    std::vector<double> angle(n);
    for (int i = 0; i < n; ++i) {
        angle[i] = dom_.interior_angle(i);
        apex_[i] = angle[i] < kLadderAngleDeg * M_PI / 180.0;
    }
    for (int i = 0; i < n; ++i) {
        if (!apex_[i]) continue;
        int sp = (i + n - 1) % n, sn = i;  // incoming and outgoing input segments
        Vec2 v = P(i), vp = P(sp), vn = P((i + 1) % n);
        double lp = distance(v, vp), ln = distance(v, vn);
        double cap_p = (apex_[sp] ? 0.45 : 0.85) * lp;
        double cap_n = (apex_[(i + 1) % n] ? 0.45 : 0.85) * ln;
        double cap = std::min(cap_p, cap_n);
        Vec2 dp = (vp - v) * (1.0 / lp), dn = (vn - v) * (1.0 / ln);
        double widen = 2 * std::tan(0.5 * angle[i]);
        double r = std::min(h_, 0.25 * std::min(lp, ln));
        while (r <= cap) {
            split_segment_at(sn, v + dn * r);
            split_segment_at(sp, v + dp * r);
            r += std::min(h_, widen * r);
        }
    }
}

// ---------------------------------------------------------------------------
// Refinement

bool Refiner::touches_apex(int t) const
{
    for (int v : tris_[t].v)
        if (v < n_input_ && apex_[v]) return true;
    return false;
}

bool Refiner::is_bad(int t) const
{
    const auto& T = tris_[t];
    Vec2 a = P(T.v[0]), b = P(T.v[1]), c = P(T.v[2]);
    double la = distance(b, c), lb = distance(c, a), lc = distance(a, b);
    double lmin = std::min({la, lb, lc});
    double area2 = orient(a, b, c);
    double circumradius = la * lb * lc / (2 * area2);
    if (circumradius > kSizeFactor * h_) return true;
    if (touches_apex(t)) return false;
    // Circumradius over shortest edge equals 1 / (2 sin(min angle)).
    double ratio = circumradius / lmin;
    static const double bound = 1.0 / (2 * std::sin((kMinAngleDeg + 1e-6) * M_PI / 180.0));
    return ratio > bound;
}

void Refiner::queue_new(const std::vector<int>& created)
{
    for (int id : created) {
        if (!tris_[id].alive) continue;
        for (int k = 0; k < 3; ++k)
            if (tris_[id].n[k] < 0 && needs_split(id, k))
                seg_queue_.push_back({tris_[id].v[(k + 1) % 3], tris_[id].v[(k + 2) % 3]});
        if (is_bad(id)) bad_queue_.push_back({id, tris_[id].v});
    }
}

void Refiner::refine()
{
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
        if (!tris_[t].alive) continue;
        queue_new({t});
    }
    const double area = dom_.area();
    const std::size_t budget =
        static_cast<std::size_t>(40.0 * area / (h_ * h_)) + 40 * pts_.size() + 20000;

    while (!seg_queue_.empty() || !bad_queue_.empty()) {
        if (pts_.size() > budget) {
            Vec2 where = pts_.back();
            throw MeshingError("refinement exceeded its vertex budget", where.x, where.y);
        }
        if (!seg_queue_.empty()) {
            auto [a, b] = seg_queue_.front();
            seg_queue_.pop_front();
            auto it = bedge_.find(edge_key(a, b));
            if (it == bedge_.end()) continue;
            int t = it->second;
            int k = 0;
            while (tris_[t].v[k] == a || tris_[t].v[k] == b) ++k;
            if (needs_split(t, k)) split_subsegment(t, k);
            continue;
        }
        auto [t, snap] = bad_queue_.front();
        bad_queue_.pop_front();
        if (!tris_[t].alive || tris_[t].v != snap || !is_bad(t)) continue;

        const auto& T = tris_[t];
        Vec2 c = circumcenter(P(T.v[0]), P(T.v[1]), P(T.v[2]));
        auto w = walk(t, c);
        if (w.blocked_edge >= 0) {
            const auto& B = tris_[w.tri];
            if (!split_protected(B.v[(w.blocked_edge + 1) % 3], B.v[(w.blocked_edge + 2) % 3])) {
                split_subsegment(w.tri, w.blocked_edge);
                bad_queue_.push_back({t, snap});
            }
            continue;
        }
        auto cav = cavity(c, w.tri, -1, -1);
        std::vector<std::array<int, 2>> encroached;
        for (int ct : cav) {
            const auto& C = tris_[ct];
            for (int k = 0; k < 3; ++k) {
                if (C.n[k] >= 0) continue;
                int a = C.v[(k + 1) % 3], b = C.v[(k + 2) % 3];
                Vec2 u = P(a) - c, v = P(b) - c;
                if (dot(u, v) < 0 && !split_protected(a, b)) encroached.push_back({a, b});
            }
        }
        if (!encroached.empty()) {
            // Split even when the opposite vertex does not encroach.
            for (auto [a, b] : encroached) {
                auto it = bedge_.find(edge_key(a, b));
                if (it == bedge_.end()) continue;
                int bt = it->second;
                int k = 0;
                while (tris_[bt].v[k] == a || tris_[bt].v[k] == b) ++k;
                split_subsegment(bt, k);
            }
            bad_queue_.push_back({t, snap});
            continue;
        }
        auto created = insert(c, w.tri, -1, -1, -1);
        queue_new(created);
    }
}

Mesh Refiner::run()
{
    n_input_ = static_cast<int>(dom_.size());
    pts_ = dom_.boundary;
    seg_verts_.resize(n_input_);
    for (int s = 0; s < n_input_; ++s) seg_verts_[s] = {{0.0, s}, {1.0, (s + 1) % n_input_}};
    apex_.assign(n_input_, false);

    ear_clip();
    lawson();
    ladder_corners();
    refine();

    Mesh mesh;
    mesh.vertices = pts_;
    std::vector<int> alive;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
        if (tris_[t].alive) alive.push_back(t);
    // Deterministic order: by lowest vertex id, then the triple.
    std::vector<std::array<int, 3>> tri;
    tri.reserve(alive.size());
    for (int t : alive) {
        auto v = tris_[t].v;
        std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
        tri.push_back(v);
    }
    std::sort(tri.begin(), tri.end());
    mesh.triangles = std::move(tri);
    for (int t : alive) {
        const auto& T = tris_[t];
        for (int k = 0; k < 3; ++k)
            if (T.n[k] < 0)
                mesh.boundary_edges.push_back({{T.v[(k + 1) % 3], T.v[(k + 2) % 3]}, dom_.markers[T.seg[k]]});
    }
    std::sort(mesh.boundary_edges.begin(), mesh.boundary_edges.end(),
              [](const BoundaryEdge& a, const BoundaryEdge& b) { return a.v < b.v; });
    mesh.update_h_max();
    return mesh;
}

}  // namespace

Mesh triangulate(const PlanarDomain& dom, double h_target)
{
    validate(dom);
    if (!(h_target > 0)) throw InvalidInput("triangulate: h_target must be positive");
    Refiner r(dom, h_target);
    return r.run();
}

}  // namespace eigenbranch
