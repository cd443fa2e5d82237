#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

namespace diaglab {

// Size limits shared by every module. Defaults are sized for desk-scale
// verification runs; the CLI exposes the vertex cap.
struct Caps {
    std::size_t vertices = 65536;       // q^m for any tuple codec
    std::size_t cliques = 4096;         // Bron-Kerbosch vertex limit
    std::size_t exact_colouring = 64;   // branch-and-bound vertex limit
    std::size_t automorphisms = 24;     // |G| for Aut(G) search
    std::size_t complete_mapping = 16;  // |G| for transversal search
    std::size_t simplicity = 256;       // |G| for normal-closure scans
    std::size_t associativity = 256;    // exhaustive axiom check bound
    std::size_t group_order = 1u << 16; // direct products / file tables
    std::size_t permutation_points = 4096; // Schreier-Sims / block systems

    // DIAGLAB_CAP_VERTICES overrides the vertex cap when set to a positive integer.
    static Caps from_environment() {
        Caps caps;
        if (const char* env = std::getenv("DIAGLAB_CAP_VERTICES")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v > 0) caps.vertices = static_cast<std::size_t>(v);
        }
        return caps;
    }
};

} // namespace diaglab
