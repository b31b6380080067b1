// Fills the edge lists, isolated points and plateau counts of the atlas
// JSON files from the eventual hull, computed once per case with b kept
// symbolic (affine forms tracked against a probe value).
//
// usage: atlas_gen <atlas-dir>

#include "pwl/graph_catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace pwl;

namespace {

ParamPoint form_of(const PointT<Tracked>& p) { return {p.x.form(), p.y.form()}; }

bool same(const ParamPoint& p, const ParamPoint& q) { return p.x == q.x && p.y == q.y; }

void fill(AtlasCase& c, const Rational& probe) {
    Tracked b = Tracked::parameter(probe);
    auto g = gamma_graph(b);

    std::vector<std::pair<std::string, ParamPoint>> named;
    for (auto& name : c.caption_vertices) named.push_back({name, c.vertex(name)});
    int fresh = 0;
    auto name_of = [&](const PointT<Tracked>& p) {
        auto f = form_of(p);
        for (auto& [n, q] : named)
            if (same(f, q)) return n;
        std::string n;
        do n = "n" + std::to_string(++fresh);
        while (std::any_of(named.begin(), named.end(), [&](auto& v) { return v.first == n; }));
        named.push_back({n, f});
        return n;
    };

    c.edges.clear();
    for (auto& e : g.edges()) c.edges.push_back({name_of(e.p), name_of(e.q)});
    c.isolated.clear();
    for (auto& p : g.isolated()) c.isolated.push_back(form_of(p));
    c.vertices = named;

    auto [n1, n3] = tabulated_arrival(probe);
    c.n1 = n1;
    c.n3 = n3;
    c.plateaus = static_cast<int>(plateaus(instantiate(c, probe)).size());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: atlas_gen <atlas-dir>\n";
        return 2;
    }
    for (auto& entry : std::filesystem::directory_iterator(argv[1])) {
        if (entry.path().extension() != ".json") continue;
        std::stringstream ss;
        ss << std::ifstream(entry.path()).rdbuf();
        auto c = parse_atlas_case(ss.str());
        // A probe that makes some intermediate form vanish is unusable; try
        // the next sample.
        bool done = false;
        for (auto& probe : c.validity.interior_samples(11)) {
            try {
                auto filled = c;
                fill(filled, probe);
                c = filled;
                done = true;
                break;
            } catch (const TrackedDegenerate& ex) {
                std::cerr << c.id << ": " << ex.what() << ", retrying\n";
            }
        }
        if (!done) return 1;
        std::ofstream(entry.path()) << atlas_case_json(c);
        std::cout << c.id << ": " << c.edges.size() << " edges, " << c.isolated.size() << " isolated, "
                  << c.plateaus << " plateaus\n";
    }
}
