#pragma once

namespace hgc {

// Complex parameters: hairy complexes HGC_{m,n}; plain graph complexes use n only.
struct Context {
  int m = 1;
  int n = 3;
  friend bool operator==(const Context&, const Context&) = default;
};

// Sign rules for permuting orientation data. Object degrees: vertex n,
// edge 1-n, hair (edge plus external point) 1-n+m, external point m.
struct ParityProfile {
  bool vertex_odd = false;
  bool edge_odd = false;
  bool flip_odd = false;
  bool hair_odd = false;
  bool point_odd = false;

  static constexpr ParityProfile from(int m, int n) {
    const bool n_odd = (n % 2) != 0;
    const bool m_odd = (m % 2) != 0;
    ParityProfile p;
    p.vertex_odd = n_odd;
    p.edge_odd = !n_odd;
    p.flip_odd = n_odd;
    p.point_odd = m_odd;
    p.hair_odd = (n_odd == m_odd);  // (1-n) + m odd  <=>  m+n even
    return p;
  }
  static constexpr ParityProfile from(Context c) { return from(c.m, c.n); }

  friend bool operator==(const ParityProfile&, const ParityProfile&) = default;
};

}  // namespace hgc
