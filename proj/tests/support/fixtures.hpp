#pragma once

#include "randcx/complex.hpp"

namespace fixtures {

using randcx::Complex2;
using randcx::build_complex;
using randcx::full_skeleton;

inline Complex2 t1() { return build_complex(3, full_skeleton, {{1, 2, 3}}); }

inline Complex2 tet() { return build_complex(4, full_skeleton, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}); }

inline Complex2 k4() { return build_complex(4, full_skeleton, {}); }

inline Complex2 x5() { return build_complex(5, full_skeleton, {{1, 4, 5}}); }

// Six-vertex projective plane.
inline Complex2 rp6()
{
    return build_complex(6, full_skeleton,
                         {{1, 2, 3}, {1, 2, 4}, {1, 3, 6}, {1, 4, 5}, {1, 5, 6},
                          {2, 3, 5}, {2, 4, 6}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}});
}

} // namespace fixtures
