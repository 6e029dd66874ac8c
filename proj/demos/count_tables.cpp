// Prints the class counts of pointed stable graphs by weight.

#include "bstar/enumerate.hpp"

#include <cstdio>

int main() {
    using namespace bstar;
    std::printf("%2s %8s %8s %8s %8s\n", "k", "all", "con", "scon", "lambda");
    for (int k = 0; k <= 5; ++k) {
        auto all = enum_pointed_stable(k);
        int con = 0, scon = 0, lam = 0;
        for (const auto& g : all) {
            auto c = connectivity(g);
            if (c != Connectivity::Disconnected) ++con;
            if (c == Connectivity::StronglyConnected) {
                ++scon;
                if (in_lambda(g)) ++lam;
            }
        }
        std::printf("%2d %8zu %8d %8d %8d\n", k, all.size(), con, scon, lam);
    }
    return 0;
}
