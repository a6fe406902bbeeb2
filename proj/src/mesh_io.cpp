#include "wgband/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wgband/common.hpp"

namespace wgband {

namespace {

const char* kMagic = "wgband-mesh";
const int kVersion = 1;

const char* tag_name(BoundaryTag t) {
    switch (t) {
        case BoundaryTag::dirichlet: return "dirichlet";
        case BoundaryTag::cavern: return "cavern";
        case BoundaryTag::periodic_lo: return "periodic_lo";
        case BoundaryTag::periodic_hi: return "periodic_hi";
        case BoundaryTag::truncation: return "truncation";
    }
    throw ConfigError("unknown boundary tag");
}

BoundaryTag tag_from_name(const std::string& s) {
    if (s == "dirichlet") return BoundaryTag::dirichlet;
    if (s == "cavern") return BoundaryTag::cavern;
    if (s == "periodic_lo") return BoundaryTag::periodic_lo;
    if (s == "periodic_hi") return BoundaryTag::periodic_hi;
    if (s == "truncation") return BoundaryTag::truncation;
    throw ConfigError("mesh file: unknown boundary tag '" + s + "'");
}

[[noreturn]] void bad(const std::string& what) {
    throw ConfigError("mesh file: " + what);
}

void expect_word(std::istream& is, const char* word) {
    std::string s;
    if (!(is >> s) || s != word) bad(std::string("expected '") + word + "'");
}

}  // namespace

void write_mesh(std::ostream& os, const Mesh& mesh) {
    char buf[80];
    os << kMagic << ' ' << kVersion << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", mesh.period);
    os << "dim " << mesh.dim << " period " << buf << '\n';

    os << "nodes " << mesh.nodes.size() << '\n';
    for (const auto& p : mesh.nodes) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g", p.x(), p.y(), p.z());
        os << buf << '\n';
    }
    os << "quads " << mesh.quads.size() << '\n';
    for (const auto& q : mesh.quads)
        os << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
    os << "hexes " << mesh.hexes.size() << '\n';
    for (const auto& h : mesh.hexes) {
        os << h[0];
        for (int c = 1; c < 8; ++c) os << ' ' << h[c];
        os << '\n';
    }
    os << "facets " << mesh.facets.size() << '\n';
    for (const auto& f : mesh.facets) {
        os << tag_name(f.tag);
        for (int c = 0; c < 4; ++c) os << ' ' << f.n[c];
        os << '\n';
    }
    os << "pairs " << mesh.periodic_pairs.size() << '\n';
    for (const auto& pr : mesh.periodic_pairs) os << pr.first << ' ' << pr.second << '\n';
    os << "end\n";
    if (!os) throw SolverError("mesh write failed");
}

Mesh read_mesh(std::istream& is) {
    std::string word;
    int version = 0;
    if (!(is >> word >> version)) bad("missing header");
    if (word != kMagic) bad("bad magic '" + word + "'");
    if (version != kVersion) bad("unsupported version " + std::to_string(version));

    Mesh mesh;
    expect_word(is, "dim");
    if (!(is >> mesh.dim) || (mesh.dim != 2 && mesh.dim != 3)) bad("bad dimension");
    expect_word(is, "period");
    if (!(is >> mesh.period)) bad("bad period");

    std::size_t n = 0;
    expect_word(is, "nodes");
    if (!(is >> n)) bad("bad node count");
    mesh.nodes.resize(n);
    for (auto& p : mesh.nodes)
        if (!(is >> p.x() >> p.y() >> p.z())) bad("truncated node table");

    auto read_ids = [&](int count, int* out, bool allow_sentinel = false) {
        for (int c = 0; c < count; ++c) {
            long long v;
            if (!(is >> v)) bad("truncated connectivity");
            const bool ok = (v >= 0 && v < static_cast<long long>(mesh.nodes.size())) ||
                            (allow_sentinel && v == -1);
            if (!ok) bad("node index out of range");
            out[c] = static_cast<int>(v);
        }
    };

    expect_word(is, "quads");
    if (!(is >> n)) bad("bad quad count");
    mesh.quads.resize(n);
    for (auto& q : mesh.quads) read_ids(4, q.data());

    expect_word(is, "hexes");
    if (!(is >> n)) bad("bad hex count");
    mesh.hexes.resize(n);
    for (auto& h : mesh.hexes) read_ids(8, h.data());

    expect_word(is, "facets");
    if (!(is >> n)) bad("bad facet count");
    mesh.facets.resize(n);
    for (auto& f : mesh.facets) {
        if (!(is >> word)) bad("truncated facet table");
        f.tag = tag_from_name(word);
        read_ids(4, f.n.data(), /*allow_sentinel=*/true);
    }

    expect_word(is, "pairs");
    if (!(is >> n)) bad("bad pair count");
    mesh.periodic_pairs.resize(n);
    for (auto& pr : mesh.periodic_pairs) {
        int ids[2];
        read_ids(2, ids);
        pr = {ids[0], ids[1]};
    }
    expect_word(is, "end");

    mesh.validate();
    return mesh;
}

void save_mesh(const std::string& path, const Mesh& mesh) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open '" + path + "' for writing");
    write_mesh(os, mesh);
}

Mesh load_mesh(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open '" + path + "'");
    return read_mesh(is);
}

}  // namespace wgband
