#ifndef PFORMS_FP_HPP
#define PFORMS_FP_HPP

// Coefficient arithmetic in the prime field F_p.  Values are kept normalized
// in [0, p).  p stays small (2, 3 or 5), so inversion by scan is fine.

namespace pforms {

inline int fp_norm(long long v, int p) {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

inline int fp_add(int a, int b, int p) {
    int s = a + b;
    return s >= p ? s - p : s;
}

inline int fp_sub(int a, int b, int p) {
    int s = a - b;
    return s < 0 ? s + p : s;
}

inline int fp_mul(int a, int b, int p) { return (a * b) % p; }

inline int fp_neg(int a, int p) { return a == 0 ? 0 : p - a; }

inline int fp_inv(int a, int p) {
    for (int x = 1; x < p; ++x)
        if ((a * x) % p == 1) return x;
    return 0; // a == 0; callers guard against this
}

} // namespace pforms

#endif
