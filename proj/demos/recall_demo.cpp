// Minimal library walkthrough: store two patterns, find their active
// sites, stimulate one memory at its sites, and print what comes back.

#include <iostream>

#include "bmatrix/bmatrix.hpp"

int main() {
    using namespace bmx;

    MemorySet memories({BipolarVector::from_bits("1100"), BipolarVector::from_bits("1010")});
    WeightMatrix t = train_hebbian(memories);
    ProximityModel prox = build_proximity(memories.width(), {Geometry::grid2d, 0});
    ActiveSiteMap map = identify_sites(memories, 2);

    for (std::size_t i = 0; i < memories.count(); ++i) {
        const auto& entry = map.entry(i);
        std::cout << "memory " << i << " (" << memories[i].to_bits() << ") level " << entry.level
                  << " sites:";
        for (std::size_t s : entry.sites) std::cout << ' ' << s;
        std::cout << '\n';
    }

    const std::size_t target = 0;
    const auto& sites = map.entry(target).sites;
    std::vector<Spin> clamp;
    for (std::size_t s : sites) clamp.push_back(memories[target][s]);

    RetrievalResult res = retrieve_independent(t, prox, sites, clamp, memories);
    std::cout << "stimulating memory " << target << " -> " << res.output.to_bits();
    if (res.matched) {
        std::cout << " (matched memory " << *res.matched << ")";
    }
    std::cout << '\n';
    return 0;
}
