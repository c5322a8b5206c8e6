#pragma once

#include <array>
#include <cstdint>

// Values exactly as printed in the source tables, errors included.
namespace primedensity::paper {

struct TableIRow {
    int exponent;
    double f;
};

struct TableIIRow {
    std::uint64_t x;
    std::uint64_t exact;
    std::uint64_t this_work;
    std::uint64_t riemann_r;
    std::uint64_t li;
    std::uint64_t gauss;
};

struct TableIIIRow {
    std::uint64_t x;
    std::uint64_t exact;
    std::uint64_t this_work;
    std::uint64_t riemann_r;
    std::uint64_t li;
    std::uint64_t gauss;
    std::uint64_t legendre;
};

inline constexpr std::array<TableIRow, 22> kTableI = {{
    {1, 0.19741491},  {2, 0.60517019},  {3, 0.95537433},  {4, 1.07364387},  {5, 1.08757100},
    {6, 1.07633249},  {7, 1.07097559},  {8, 1.06395401},  {9, 1.05662871},  {10, 1.05036512},
    {11, 1.04512641}, {12, 1.04087169}, {13, 1.03734543}, {14, 1.03437617}, {15, 1.03184411},
    {16, 1.02966040}, {17, 1.02775775}, {18, 1.02608510}, {19, 1.02460311}, {20, 1.02328086},
    {21, 1.02209379}, {22, 1.02102214},
}};

inline constexpr std::array<TableIIRow, 20> kTableII = {{
    {5, 2, 2, 3, 4, 2},
    {10, 4, 4, 4, 6, 4},
    {20, 8, 7, 7, 10, 7},
    {30, 10, 10, 10, 13, 9},
    {40, 12, 12, 13, 16, 11},
    {50, 15, 14, 15, 18, 13},
    {60, 17, 17, 17, 21, 15},
    {70, 19, 19, 19, 23, 16},
    {80, 22, 21, 21, 26, 18},
    {90, 24, 23, 24, 28, 20},
    {100, 25, 25, 26, 30, 22},
    {200, 46, 44, 45, 50, 38},
    {300, 62, 61, 62, 59, 53},
    {400, 78, 78, 78, 85, 67},
    {500, 101, 101, 102, 101, 80},
    {600, 109, 109, 110, 118, 94},
    {700, 125, 124, 125, 133, 107},
    {800, 139, 139, 140, 148, 120},
    {900, 154, 153, 154, 163, 132},
    {1000, 168, 168, 168, 178, 145},
}};

inline constexpr std::array<TableIIIRow, 10> kTableIII = {{
    {10ULL, 4, 4, 4, 6, 4, 20},
    {100ULL, 25, 25, 26, 30, 22, 37},
    {1000ULL, 168, 168, 168, 178, 145, 196},
    {10000ULL, 1229, 1226, 1227, 1246, 1086, 1350},
    {100000ULL, 9592, 9586, 9587, 9630, 8686, 10299},
    {1000000ULL, 78498, 78533, 78527, 78628, 72382, 83251},
    {10000000ULL, 664579, 664735, 664667, 664918, 620421, 698595},
    {100000000ULL, 5761455, 5760802, 5761552, 5762209, 5428681, 6017926},
    {1000000000ULL, 50847534, 50848760, 50847455, 50849235, 48254942, 52855223},
    {10000000000ULL, 455052511, 455041196, 455050683, 455055614, 434294481, 471204883},
}};

}  // namespace primedensity::paper
