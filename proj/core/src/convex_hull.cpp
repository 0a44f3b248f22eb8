#include "inspsim/convex_hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace inspsim {

namespace {

struct Face {
    std::array<int, 3> v{};         // CCW from outside
    std::array<int, 3> neighbor{};  // neighbor across edge (v[i], v[i+1])
    Vec3 n = Vec3::Zero();
    double d = 0.0;
    bool dead = false;
    std::vector<int> outside;

    double dist(const Vec3& p) const { return n.dot(p) - d; }
};

struct EdgeKey {
    int a, b;
    bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};

struct EdgeHash {
    std::size_t operator()(const EdgeKey& e) const {
        return std::hash<std::uint64_t>()((std::uint64_t(e.a) << 32) ^ std::uint64_t(e.b));
    }
};

void compute_plane(Face& f, const std::vector<Vec3>& pts) {
    const Vec3& a = pts[std::size_t(f.v[0])];
    const Vec3 e1 = pts[std::size_t(f.v[1])] - a;
    const Vec3 e2 = pts[std::size_t(f.v[2])] - a;
    f.n = e1.cross(e2);
    const double len = f.n.norm();
    if (len > 0.0) f.n /= len;
    f.d = f.n.dot(a);
}

}  // namespace

std::vector<std::uint32_t> convex_hull_vertices(const std::vector<Vec3>& pts) {
    const int n = int(pts.size());
    if (n < 4) throw std::invalid_argument("convex_hull: need at least 4 points");

    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    const double eps = std::max(1e-12, 1e-10 * scale);

    // Initial simplex: extremes along x, farthest from line, farthest from plane.
    int i0 = 0, i1 = 0;
    for (int i = 1; i < n; ++i) {
        if (pts[std::size_t(i)].x() < pts[std::size_t(i0)].x()) i0 = i;
        if (pts[std::size_t(i)].x() > pts[std::size_t(i1)].x()) i1 = i;
    }
    if ((pts[std::size_t(i1)] - pts[std::size_t(i0)]).norm() < eps) {
        // all x equal; fall back to max pairwise among a few axes
        for (int i = 1; i < n; ++i) {
            if ((pts[std::size_t(i)] - pts[0]).norm() >
                (pts[std::size_t(i1)] - pts[std::size_t(i0)]).norm()) {
                i0 = 0;
                i1 = i;
            }
        }
    }
    const Vec3 dir = pts[std::size_t(i1)] - pts[std::size_t(i0)];
    if (dir.norm() < eps) throw std::invalid_argument("convex_hull: degenerate points");

    int i2 = -1;
    double best = eps;
    for (int i = 0; i < n; ++i) {
        const double d = dir.cross(pts[std::size_t(i)] - pts[std::size_t(i0)]).norm() / dir.norm();
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (i2 < 0) throw std::invalid_argument("convex_hull: collinear points");

    Vec3 pn = (pts[std::size_t(i1)] - pts[std::size_t(i0)])
                  .cross(pts[std::size_t(i2)] - pts[std::size_t(i0)]);
    pn.normalize();
    const double pd = pn.dot(pts[std::size_t(i0)]);
    int i3 = -1;
    best = eps;
    for (int i = 0; i < n; ++i) {
        const double d = std::abs(pn.dot(pts[std::size_t(i)]) - pd);
        if (d > best) {
            best = d;
            i3 = i;
        }
    }
    if (i3 < 0) throw std::invalid_argument("convex_hull: coplanar points");

    if (pn.dot(pts[std::size_t(i3)]) - pd > 0.0) std::swap(i1, i2);  // make i3 below (i0,i1,i2)

    std::vector<Face> faces;
    faces.reserve(std::size_t(4 * n));
    auto add_face = [&](int a, int b, int c) {
        Face f;
        f.v = {a, b, c};
        compute_plane(f, pts);
        faces.push_back(std::move(f));
        return int(faces.size()) - 1;
    };
    add_face(i0, i1, i2);
    add_face(i0, i3, i1);
    add_face(i1, i3, i2);
    add_face(i2, i3, i0);
    faces[0].neighbor = {1, 2, 3};
    faces[1].neighbor = {3, 2, 0};
    faces[2].neighbor = {1, 3, 0};
    faces[3].neighbor = {2, 1, 0};

    // Conflict lists.
    std::vector<int> pending;
    for (int i = 0; i < n; ++i) {
        if (i == i0 || i == i1 || i == i2 || i == i3) continue;
        for (int fi = 0; fi < 4; ++fi) {
            if (faces[std::size_t(fi)].dist(pts[std::size_t(i)]) > eps) {
                faces[std::size_t(fi)].outside.push_back(i);
                break;
            }
        }
    }
    for (int fi = 0; fi < 4; ++fi) {
        if (!faces[std::size_t(fi)].outside.empty()) pending.push_back(fi);
    }

    std::vector<int> visible, stack;
    std::vector<std::array<int, 3>> horizon;  // (a, b, outside-neighbor face)
    std::unordered_map<EdgeKey, int, EdgeHash> edge_to_face;

    while (!pending.empty()) {
        const int fi = pending.back();
        pending.pop_back();
        Face& f = faces[std::size_t(fi)];
        if (f.dead || f.outside.empty()) continue;

        // Farthest conflict point.
        int p = f.outside[0];
        double pd_best = f.dist(pts[std::size_t(p)]);
        for (const int q : f.outside) {
            const double d = f.dist(pts[std::size_t(q)]);
            if (d > pd_best) {
                pd_best = d;
                p = q;
            }
        }
        const Vec3& apex = pts[std::size_t(p)];

        // Flood-fill visible region and gather horizon edges.
        visible.clear();
        horizon.clear();
        stack.clear();
        stack.push_back(fi);
        faces[std::size_t(fi)].dead = true;
        while (!stack.empty()) {
            const int ci = stack.back();
            stack.pop_back();
            visible.push_back(ci);
            for (int e = 0; e < 3; ++e) {
                const int ni = faces[std::size_t(ci)].neighbor[std::size_t(e)];
                Face& nf = faces[std::size_t(ni)];
                if (nf.dead) continue;
                if (nf.dist(apex) > eps) {
                    nf.dead = true;
                    stack.push_back(ni);
                } else {
                    const int a = faces[std::size_t(ci)].v[std::size_t(e)];
                    const int b = faces[std::size_t(ci)].v[std::size_t((e + 1) % 3)];
                    horizon.push_back({a, b, ni});
                }
            }
        }

        // Cone of new faces over the horizon.
        edge_to_face.clear();
        std::vector<int> created;
        created.reserve(horizon.size());
        for (const auto& [a, b, outer] : horizon) {
            const int nfidx = add_face(a, b, p);
            Face& nf = faces[std::size_t(nfidx)];
            nf.neighbor[0] = outer;
            // patch the outer face's neighbor slot that pointed into the dead region
            Face& of = faces[std::size_t(outer)];
            for (int e = 0; e < 3; ++e) {
                if (of.v[std::size_t(e)] == b && of.v[std::size_t((e + 1) % 3)] == a) {
                    of.neighbor[std::size_t(e)] = nfidx;
                }
            }
            edge_to_face[{b, p}] = nfidx;  // edge 1 of nf
            edge_to_face[{p, a}] = nfidx;  // edge 2 of nf
            created.push_back(nfidx);
        }
        for (const int ci : created) {
            Face& nf = faces[std::size_t(ci)];
            nf.neighbor[1] = edge_to_face.at({nf.v[2], nf.v[1]});  // (p,b) reversed
            nf.neighbor[2] = edge_to_face.at({nf.v[0], nf.v[2]});  // (a,p) reversed
        }

        // Reassign conflict points of the dead region.
        for (const int vi : visible) {
            for (const int q : faces[std::size_t(vi)].outside) {
                if (q == p) continue;
                for (const int ci : created) {
                    if (faces[std::size_t(ci)].dist(pts[std::size_t(q)]) > eps) {
                        faces[std::size_t(ci)].outside.push_back(q);
                        break;
                    }
                }
            }
            faces[std::size_t(vi)].outside.clear();
            faces[std::size_t(vi)].outside.shrink_to_fit();
        }
        for (const int ci : created) {
            if (!faces[std::size_t(ci)].outside.empty()) pending.push_back(ci);
        }
    }

    std::vector<std::uint32_t> result;
    std::vector<std::uint8_t> on_hull(std::size_t(n), 0);
    for (const auto& f : faces) {
        if (f.dead) continue;
        for (const int v : f.v) on_hull[std::size_t(v)] = 1;
    }
    for (int i = 0; i < n; ++i) {
        if (on_hull[std::size_t(i)]) result.push_back(std::uint32_t(i));
    }
    return result;
}

}  // namespace inspsim
