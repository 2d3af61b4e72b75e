#include "bmat/canonical.hpp"

#include "bmat/classes.hpp"
#include "bmat/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bmat {

ComplexMatrix jordan_block(Eigen::Index n, Complex lambda) {
    if (n <= 0) throw DimensionError("jordan_block: size must be positive");
    ComplexMatrix J = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        J(i, i) = lambda;
        if (i + 1 < n) J(i, i + 1) = 1.0;
    }
    return J;
}

ComplexMatrix reverse_identity(Eigen::Index n) {
    if (n <= 0) throw DimensionError("reverse_identity: size must be positive");
    ComplexMatrix R = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) R(i, n - 1 - i) = 1.0;
    return R;
}

namespace {

// One extracted Jordan chain lifted back to C^n: cols = [N^{p-1}v ... Nv v].
struct RawBlock {
    ComplexMatrix cols;
    Complex eig;
    bool real_eig = true;
    int eta = 0;
    int size = 0;
};

// Adjacent Schur swap: brings diag entry i+1 in front of entry i while keeping
// the factorisation A = Q T Q^H. Equal entries need no movement.
void schur_swap_adjacent(ComplexMatrix& T, ComplexMatrix& Q, Eigen::Index i) {
    const Complex a = T(i, i), b = T(i, i + 1), d = T(i + 1, i + 1);
    Complex x1 = b, x2 = d - a;
    const double rho = std::sqrt(std::norm(x1) + std::norm(x2));
    if (rho == 0.0) return;
    x1 /= rho;
    x2 /= rho;
    Eigen::Matrix2cd G;
    G << x1, -std::conj(x2), x2, std::conj(x1);  // first column: eigenvector of the 2x2 for d
    T.middleRows(i, 2) = G.adjoint() * T.middleRows(i, 2);
    T.middleCols(i, 2) = T.middleCols(i, 2) * G;
    Q.middleCols(i, 2) = Q.middleCols(i, 2) * G;
    T(i + 1, i) = 0.0;
}

// Moves the selected Schur positions to the front (relative order kept).
void schur_select_front(ComplexMatrix& T, ComplexMatrix& Q, std::vector<int> sel) {
    std::sort(sel.begin(), sel.end());
    int target = 0;
    for (int idx : sel) {
        for (int i = idx; i > target; --i) schur_swap_adjacent(T, Q, i - 1);
        ++target;
    }
}

// Orthonormal null-space basis with an absolute singular-value cutoff.
ComplexMatrix null_space_abs(const ComplexMatrix& M, double cutoff) {
    Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return svd.matrixV().rightCols(M.cols() - rank);
}

// Orthonormal basis of the row space (complement of the null space).
ComplexMatrix row_space_abs(const ComplexMatrix& M, double cutoff) {
    Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return svd.matrixV().leftCols(rank);
}

ComplexMatrix null_space_rel(const ComplexMatrix& M, double rank_tol) {
    Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    if (sv.size() > 0 && sv(0) > 0.0)
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > rank_tol * sv(0)) ++rank;
    return svd.matrixV().rightCols(M.cols() - rank);
}

// Height profile d_k = dim null(Ns^k) restricted to the orthonormal basis Wr,
// with the monotonicity checks that certify a consistent chain structure.
struct HeightProfile {
    std::vector<int> d;  // d[0] = 0
    int ell = 0;
};

HeightProfile height_profile(const ComplexMatrix& Ns, const ComplexMatrix& Wr, int max_h,
                             double cutoff) {
    const int r = static_cast<int>(Wr.cols());
    HeightProfile hp;
    hp.d.push_back(0);
    ComplexMatrix Mk = Wr;
    while (hp.d.back() < r) {
        Mk = Ns * Mk;
        ++hp.ell;
        if (hp.ell > max_h)
            throw StructureError(
                "canonical: nilpotent height exceeds cluster size; adjust cluster_tol");
        Eigen::JacobiSVD<ComplexMatrix> svd(Mk);
        int rank = 0;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > cutoff) ++rank;
        int dk = r - rank;
        if (dk < hp.d.back())
            throw StructureError("canonical: chain ranks not monotone; adjust cluster_tol");
        hp.d.push_back(dk);
    }
    for (size_t k = 2; k < hp.d.size(); ++k)
        if (hp.d[k] - hp.d[k - 1] > hp.d[k - 1] - hp.d[k - 2])
            throw StructureError("canonical: chain counts increase with height; adjust cluster_tol");
    return hp;
}

// Canonical chains of one real-eigenvalue cluster, worked in the coordinates
// of the invariant subspace basis W. Returns lifted blocks.
std::vector<RawBlock> process_real_cluster(const ComplexMatrix& A, const ComplexMatrix& B,
                                           const ComplexMatrix& W, double mu,
                                           const ToleranceConfig& cfg) {
    const Eigen::Index m = W.cols();
    const ComplexMatrix Ac = W.adjoint() * A * W;
    const ComplexMatrix Bc = W.adjoint() * B * W;
    const ComplexMatrix Nc = Ac - mu * ComplexMatrix::Identity(m, m);
    const double sc = std::max(1.0, two_norm(Nc));
    const ComplexMatrix Ns = Nc / sc;

    std::vector<ComplexMatrix> Npow(static_cast<size_t>(m) + 1);
    Npow[0] = ComplexMatrix::Identity(m, m);
    for (Eigen::Index k = 1; k <= m; ++k) Npow[static_cast<size_t>(k)] = Nc * Npow[static_cast<size_t>(k - 1)];

    std::vector<RawBlock> out;
    ComplexMatrix Wr = ComplexMatrix::Identity(m, m);
    int guard = 0;
    while (Wr.cols() > 0) {
        if (++guard > static_cast<int>(m) + 1)
            throw StructureError("canonical: chain extraction did not terminate");
        HeightProfile hp = height_profile(Ns, Wr, static_cast<int>(m), cfg.rank_tol);
        const int ell = hp.ell;
        const int cnt = hp.d[static_cast<size_t>(ell)] - hp.d[static_cast<size_t>(ell - 1)];

        // representatives of maximal height: row space of Ns^{ell-1} Wr
        ComplexMatrix Mprev = Wr;
        for (int k = 0; k < ell - 1; ++k) Mprev = Ns * Mprev;
        ComplexMatrix tops = Wr * row_space_abs(Mprev, cfg.rank_tol);
        if (tops.cols() != cnt)
            throw StructureError("canonical: top count mismatch; adjust cluster_tol");

        // leading pairing form on the tops; its eigenstructure fixes the signs
        ComplexMatrix G = tops.adjoint() * Bc * (Npow[static_cast<size_t>(ell - 1)] * tops);
        G = 0.5 * (G + G.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> ges(G);
        double gmax = 0.0;
        for (Eigen::Index i = 0; i < cnt; ++i) gmax = std::max(gmax, std::abs(ges.eigenvalues()(i)));
        if (gmax == 0.0)
            throw StructureError("canonical: degenerate chain pairing; adjust cluster_tol");
        for (Eigen::Index i = 0; i < cnt; ++i)
            if (std::abs(ges.eigenvalues()(i)) <= cfg.rank_tol * gmax)
                throw StructureError("canonical: degenerate chain pairing; adjust cluster_tol");

        std::vector<ComplexVector> u(static_cast<size_t>(cnt));
        std::vector<int> eta(static_cast<size_t>(cnt));
        for (Eigen::Index k = 0; k < cnt; ++k) {
            double g = ges.eigenvalues()(k);
            u[static_cast<size_t>(k)] = tops * ges.eigenvectors().col(k) / std::sqrt(std::abs(g));
            eta[static_cast<size_t>(k)] = g < 0 ? -1 : 1;
        }

        // kill the sub-antidiagonal moments level by level; corrections at
        // level s only touch levels <= s, so one pass per level suffices
        for (int s = ell - 2; s >= 0; --s) {
            const int dp = ell - 1 - s;
            for (int k = 0; k < cnt; ++k)
                for (int mm = k; mm < cnt; ++mm) {
                    Complex pv = u[static_cast<size_t>(k)]
                                     .dot(Bc * (Npow[static_cast<size_t>(s)] * u[static_cast<size_t>(mm)]));
                    if (k == mm) {
                        double c = -pv.real() * eta[static_cast<size_t>(k)] / 2.0;
                        u[static_cast<size_t>(k)] += c * (Npow[static_cast<size_t>(dp)] * u[static_cast<size_t>(k)]);
                    } else {
                        Complex c = -std::conj(pv) * static_cast<double>(eta[static_cast<size_t>(mm)]);
                        u[static_cast<size_t>(k)] += c * (Npow[static_cast<size_t>(dp)] * u[static_cast<size_t>(mm)]);
                    }
                }
        }

        // emit chains, eta = +1 blocks first within the round
        std::vector<int> order(static_cast<size_t>(cnt));
        for (int k = 0; k < cnt; ++k) order[static_cast<size_t>(k)] = k;
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return eta[static_cast<size_t>(x)] > eta[static_cast<size_t>(y)]; });
        ComplexMatrix Xall(m, static_cast<Eigen::Index>(ell) * cnt);
        Eigen::Index xc = 0;
        for (int k : order) {
            RawBlock blk;
            blk.size = ell;
            blk.eig = Complex(mu, 0.0);
            blk.real_eig = true;
            blk.eta = eta[static_cast<size_t>(k)];
            blk.cols.resize(W.rows(), ell);
            for (int j = ell - 1; j >= 0; --j) {
                ComplexVector col = Npow[static_cast<size_t>(j)] * u[static_cast<size_t>(k)];
                blk.cols.col(ell - 1 - j) = W * col;
                Xall.col(xc++) = col;
            }
            out.push_back(std::move(blk));
        }

        // recurse into the B-orthogonal complement of the extracted chains
        ComplexMatrix Gm = Xall.adjoint() * Bc * Wr;
        ComplexMatrix nullc = null_space_rel(Gm, cfg.rank_tol);
        if (nullc.cols() != Wr.cols() - static_cast<Eigen::Index>(ell) * cnt)
            throw StructureError("canonical: complement dimension mismatch; adjust cluster_tol");
        Wr = Wr * nullc;
    }
    return out;
}

// Canonical chains of a nonreal conjugate pair of clusters. The lambda-side
// chains are corrected against a dual basis extracted from the conjugate side,
// which carries the pairing to the reversal pattern with no signs.
std::vector<RawBlock> process_pair_cluster(const ComplexMatrix& A, const ComplexMatrix& B,
                                           const ComplexMatrix& Wup, const ComplexMatrix& Wdn,
                                           Complex lambda, const ToleranceConfig& cfg) {
    const Eigen::Index m = Wup.cols();
    if (Wdn.cols() != m)
        throw StructureError("canonical: conjugate cluster sizes differ; adjust cluster_tol");
    const ComplexMatrix Au = Wup.adjoint() * A * Wup;
    const ComplexMatrix Ad = Wdn.adjoint() * A * Wdn;
    const ComplexMatrix Nu = Au - lambda * ComplexMatrix::Identity(m, m);
    const ComplexMatrix Nd = Ad - std::conj(lambda) * ComplexMatrix::Identity(m, m);
    const ComplexMatrix Bdu = Wdn.adjoint() * B * Wup;  // <dn, up> pairing in coords
    const ComplexMatrix Bud = Wup.adjoint() * B * Wdn;
    const double scu = std::max(1.0, two_norm(Nu));
    const double scd = std::max(1.0, two_norm(Nd));
    const ComplexMatrix Nsu = Nu / scu;
    const ComplexMatrix Nsd = Nd / scd;

    std::vector<ComplexMatrix> NupPow(static_cast<size_t>(m) + 1), NdnPow(static_cast<size_t>(m) + 1);
    NupPow[0] = ComplexMatrix::Identity(m, m);
    NdnPow[0] = ComplexMatrix::Identity(m, m);
    for (Eigen::Index k = 1; k <= m; ++k) {
        NupPow[static_cast<size_t>(k)] = Nu * NupPow[static_cast<size_t>(k - 1)];
        NdnPow[static_cast<size_t>(k)] = Nd * NdnPow[static_cast<size_t>(k - 1)];
    }

    std::vector<RawBlock> out;
    ComplexMatrix Wru = ComplexMatrix::Identity(m, m);
    ComplexMatrix Wrd = ComplexMatrix::Identity(m, m);
    int guard = 0;
    while (Wru.cols() > 0) {
        if (++guard > static_cast<int>(m) + 1)
            throw StructureError("canonical: chain extraction did not terminate");
        HeightProfile hu = height_profile(Nsu, Wru, static_cast<int>(m), cfg.rank_tol);
        HeightProfile hd = height_profile(Nsd, Wrd, static_cast<int>(m), cfg.rank_tol);
        if (hu.d != hd.d)
            throw StructureError("canonical: conjugate cluster chain structure mismatch");
        const int ell = hu.ell;
        const int cnt = hu.d[static_cast<size_t>(ell)] - hu.d[static_cast<size_t>(ell - 1)];

        ComplexMatrix Mu = Wru, Md = Wrd;
        for (int k = 0; k < ell - 1; ++k) {
            Mu = Nsu * Mu;
            Md = Nsd * Md;
        }
        ComplexMatrix t_tops = Wru * row_space_abs(Mu, cfg.rank_tol);
        ComplexMatrix s_tops = Wrd * row_space_abs(Md, cfg.rank_tol);
        if (t_tops.cols() != cnt || s_tops.cols() != cnt)
            throw StructureError("canonical: top count mismatch; adjust cluster_tol");

        ComplexMatrix G = s_tops.adjoint() * Bdu * (NupPow[static_cast<size_t>(ell - 1)] * t_tops);
        Eigen::JacobiSVD<ComplexMatrix> gsvd(G);
        const auto& gsv = gsvd.singularValues();
        if (gsv(0) == 0.0 || gsv(gsv.size() - 1) <= cfg.rank_tol * gsv(0))
            throw StructureError("canonical: degenerate chain pairing; adjust cluster_tol");
        // dual normalisation: make <s'_i, N^{ell-1} t_j> = delta_ij
        ComplexMatrix Ginv = G.inverse();
        ComplexMatrix snew = s_tops * Ginv.adjoint();

        std::vector<ComplexVector> t(static_cast<size_t>(cnt)), sdual(static_cast<size_t>(cnt));
        for (int k = 0; k < cnt; ++k) {
            t[static_cast<size_t>(k)] = t_tops.col(k);
            sdual[static_cast<size_t>(k)] = snew.col(k);
        }

        for (int s = ell - 2; s >= 0; --s) {
            const int dp = ell - 1 - s;
            for (int i = 0; i < cnt; ++i)
                for (int j = 0; j < cnt; ++j) {
                    Complex pv = sdual[static_cast<size_t>(i)]
                                     .dot(Bdu * (NupPow[static_cast<size_t>(s)] * t[static_cast<size_t>(j)]));
                    t[static_cast<size_t>(j)] += (-pv) * (NupPow[static_cast<size_t>(dp)] * t[static_cast<size_t>(i)]);
                }
        }

        ComplexMatrix Xu(m, static_cast<Eigen::Index>(ell) * cnt);
        ComplexMatrix Xd(m, static_cast<Eigen::Index>(ell) * cnt);
        Eigen::Index xc = 0;
        for (int k = 0; k < cnt; ++k) {
            RawBlock blk;
            blk.size = 2 * ell;
            blk.eig = lambda;
            blk.real_eig = false;
            blk.eta = 0;
            blk.cols.resize(Wup.rows(), 2 * ell);
            for (int j = ell - 1; j >= 0; --j) {
                ComplexVector cu = NupPow[static_cast<size_t>(j)] * t[static_cast<size_t>(k)];
                ComplexVector cd = NdnPow[static_cast<size_t>(j)] * sdual[static_cast<size_t>(k)];
                blk.cols.col(ell - 1 - j) = Wup * cu;
                blk.cols.col(2 * ell - 1 - j) = Wdn * cd;
                Xu.col(xc) = cu;
                Xd.col(xc) = cd;
                ++xc;
            }
            out.push_back(std::move(blk));
        }

        ComplexMatrix nullu = null_space_rel(ComplexMatrix(Xd.adjoint() * Bdu * Wru), cfg.rank_tol);
        ComplexMatrix nulld = null_space_rel(ComplexMatrix(Xu.adjoint() * Bud * Wrd), cfg.rank_tol);
        if (nullu.cols() != Wru.cols() - static_cast<Eigen::Index>(ell) * cnt ||
            nulld.cols() != Wrd.cols() - static_cast<Eigen::Index>(ell) * cnt)
            throw StructureError("canonical: complement dimension mismatch; adjust cluster_tol");
        Wru = Wru * nullu;
        Wrd = Wrd * nulld;
    }
    return out;
}

}  // namespace

ComplexMatrix CanonicalPairForm::target_B() const {
    Eigen::Index n = T.rows();
    ComplexMatrix Bt = ComplexMatrix::Zero(n, n);
    Eigen::Index off = 0;
    for (const CanonicalBlock& b : blocks) {
        if (b.real_eigenvalue) {
            Bt.block(off, off, b.size, b.size) =
                static_cast<double>(b.eta) * reverse_identity(b.size);
        } else {
            // pair block couples the two conjugate chains through one reversal
            Eigen::Index k = b.size / 2;
            Bt.block(off, off + k, k, k) = reverse_identity(k);
            Bt.block(off + k, off, k, k) = reverse_identity(k);
        }
        off += b.size;
    }
    return Bt;
}

std::vector<int> CanonicalPairForm::block_sizes() const {
    std::vector<int> s;
    for (const CanonicalBlock& b : blocks) s.push_back(b.size);
    return s;
}

std::vector<int> CanonicalPairForm::etas() const {
    std::vector<int> e;
    for (const CanonicalBlock& b : blocks)
        if (b.real_eigenvalue) e.push_back(b.eta);
    return e;
}

CanonicalPairForm canonical_pair_form(const ComplexMatrix& A, const IndefiniteProduct& P,
                                      const ToleranceConfig& cfg) {
    cfg.validate();
    if (P.kind != ProductKind::Hermitian)
        throw UnsupportedFormError("canonical_pair_form: Hermitian kind required (hermitize first)");
    if (A.rows() != A.cols() || A.rows() != P.size())
        throw DimensionError("canonical_pair_form: A must be square and match the product size");
    if (!classify(A, P, cfg).is(StructureClass::J))
        throw PreconditionError("canonical_pair_form: input must be selfadjoint within tolerance");

    const Eigen::Index n = A.rows();
    const double nA = two_norm(A);
    const double radius = cfg.cluster_tol * (1.0 + nA);

    Eigen::ComplexSchur<ComplexMatrix> schur(A, /*computeU=*/true);
    if (schur.info() != Eigen::Success)
        throw Error("canonical_pair_form: Schur factorisation failed");
    std::vector<Complex> eigs(n);
    for (Eigen::Index i = 0; i < n; ++i) eigs[static_cast<size_t>(i)] = schur.matrixT()(i, i);

    std::vector<std::vector<int>> clusters = cluster_points(eigs, radius);
    struct ClusterInfo {
        Complex mean;
        std::vector<int> members;
        bool real_eig = false;
        int partner = -1;  // for nonreal: index of the conjugate cluster
        bool upper = false;
    };
    std::vector<ClusterInfo> infos;
    for (auto& c : clusters) {
        ClusterInfo ci;
        ci.members = c;
        Complex mu = 0.0;
        for (int i : c) mu += eigs[static_cast<size_t>(i)];
        mu /= static_cast<double>(c.size());
        ci.mean = mu;
        ci.real_eig = std::abs(mu.imag()) <= radius;
        infos.push_back(std::move(ci));
    }
    // conjugate matching for nonreal clusters
    for (size_t i = 0; i < infos.size(); ++i) {
        if (infos[i].real_eig || infos[i].partner >= 0) continue;
        for (size_t j = 0; j < infos.size(); ++j) {
            if (j == i || infos[j].real_eig || infos[j].partner >= 0) continue;
            if (std::abs(infos[i].mean - std::conj(infos[j].mean)) <= 2.0 * radius) {
                infos[i].partner = static_cast<int>(j);
                infos[j].partner = static_cast<int>(i);
                break;
            }
        }
        if (infos[i].partner < 0)
            throw StructureError("canonical: nonreal eigenvalue cluster lacks a conjugate partner");
        infos[i].upper = infos[i].mean.imag() > 0;
        infos[static_cast<size_t>(infos[i].partner)].upper = !infos[i].upper;
    }

    auto schur_basis = [&](const std::vector<int>& members) {
        ComplexMatrix T = schur.matrixT();
        ComplexMatrix Q = schur.matrixU();
        schur_select_front(T, Q, members);
        return ComplexMatrix(Q.leftCols(static_cast<Eigen::Index>(members.size())));
    };

    std::vector<RawBlock> raw;
    for (size_t i = 0; i < infos.size(); ++i) {
        const ClusterInfo& ci = infos[i];
        if (ci.real_eig) {
            ComplexMatrix W = schur_basis(ci.members);
            auto blocks = process_real_cluster(A, P.B, W, ci.mean.real(), cfg);
            for (auto& b : blocks) raw.push_back(std::move(b));
        } else if (ci.upper) {
            const ClusterInfo& cj = infos[static_cast<size_t>(ci.partner)];
            if (ci.members.size() != cj.members.size())
                throw StructureError("canonical: conjugate cluster sizes differ; adjust cluster_tol");
            Complex lambda = 0.5 * (ci.mean + std::conj(cj.mean));
            ComplexMatrix Wup = schur_basis(ci.members);
            ComplexMatrix Wdn = schur_basis(cj.members);
            auto blocks = process_pair_cluster(A, P.B, Wup, Wdn, lambda, cfg);
            for (auto& b : blocks) raw.push_back(std::move(b));
        }
    }

    // deterministic global order: real ascending eigenvalue, then pairs by
    // (Re, Im); within a cluster descending size, then eta +1 first
    std::stable_sort(raw.begin(), raw.end(), [](const RawBlock& x, const RawBlock& y) {
        if (x.real_eig != y.real_eig) return x.real_eig;
        if (x.real_eig) {
            if (x.eig.real() != y.eig.real()) return x.eig.real() < y.eig.real();
        } else {
            if (x.eig.real() != y.eig.real()) return x.eig.real() < y.eig.real();
            if (x.eig.imag() != y.eig.imag()) return x.eig.imag() < y.eig.imag();
        }
        if (x.size != y.size) return x.size > y.size;
        return x.eta > y.eta;
    });

    CanonicalPairForm out;
    out.T.resize(n, n);
    out.J = ComplexMatrix::Zero(n, n);
    Eigen::Index off = 0;
    for (const RawBlock& b : raw) {
        if (off + b.size > n)
            throw StructureError("canonical: extracted chains exceed the space dimension");
        out.T.middleCols(off, b.size) = b.cols;
        if (b.real_eig) {
            out.J.block(off, off, b.size, b.size) = jordan_block(b.size, b.eig);
        } else {
            Eigen::Index k = b.size / 2;
            out.J.block(off, off, k, k) = jordan_block(k, b.eig);
            out.J.block(off + k, off + k, k, k) = jordan_block(k, std::conj(b.eig));
        }
        CanonicalBlock cb;
        cb.size = b.size;
        cb.eigenvalue = b.eig;
        cb.real_eigenvalue = b.real_eig;
        cb.eta = b.eta;
        out.blocks.push_back(cb);
        off += b.size;
    }
    if (off != n)
        throw StructureError("canonical: extracted chains do not span the space; adjust cluster_tol");

    out.cond_T = cond_2(out.T);
    if (!std::isfinite(out.cond_T))
        throw StructureError("canonical: chain basis numerically singular");
    out.residual_A = two_norm(ComplexMatrix(solve(out.T, ComplexMatrix(A * out.T), cfg) - out.J));
    out.residual_B = two_norm(ComplexMatrix(out.T.adjoint() * P.B * out.T - out.target_B()));
    const double bound_A = cfg.cluster_tol * (1.0 + nA) * out.cond_T;
    const double bound_B = cfg.cluster_tol * P.norm_B * out.cond_T * out.cond_T;
    if (out.residual_A > bound_A || out.residual_B > bound_B) {
        std::ostringstream oss;
        oss << "canonical: residual certification failed: ||T^-1 A T - J|| = " << out.residual_A
            << " (bound " << bound_A << "), ||T^H B T - B~|| = " << out.residual_B << " (bound "
            << bound_B << ")";
        throw StructureError(oss.str());
    }
    return out;
}

ComplexMatrix commuting_one_regular(const ComplexMatrix& A, const IndefiniteProduct& P,
                                    const ToleranceConfig& cfg) {
    CanonicalPairForm cpf = canonical_pair_form(A, P, cfg);
    const Eigen::Index n = A.rows();
    ComplexMatrix Ct = ComplexMatrix::Zero(n, n);
    Eigen::Index off = 0;
    int next_real = 0, next_pair = 0;
    for (const CanonicalBlock& b : cpf.blocks) {
        if (b.real_eigenvalue) {
            Ct.block(off, off, b.size, b.size) =
                jordan_block(b.size, Complex(static_cast<double>(++next_real), 0.0));
        } else {
            Eigen::Index k = b.size / 2;
            Complex v(static_cast<double>(++next_pair), 1.0);
            Ct.block(off, off, k, k) = jordan_block(k, v);
            Ct.block(off + k, off + k, k, k) = jordan_block(k, std::conj(v));
        }
        off += b.size;
    }
    ComplexMatrix Tinv = solve(cpf.T, ComplexMatrix::Identity(n, n), cfg);
    ComplexMatrix C = cpf.T * Ct * Tinv;

    // residuals scale with the conditioning of the recovered basis
    const double slack = std::max(1.0, cpf.cond_T * cpf.cond_T);
    const double tol = std::max(cfg.eq_tol, cfg.cluster_tol * slack);
    const double nC = two_norm(C);
    const double res_J = classify(C, P, cfg).res_J;
    const double comm = two_norm(ComplexMatrix(A * C - C * A));
    if (res_J > tol * (1.0 + nC) * (1.0 + nC))
        throw StructureError("commuting_one_regular: selfadjointness certification failed");
    if (comm > tol * (1.0 + two_norm(A)) * (1.0 + nC))
        throw StructureError("commuting_one_regular: commutation certification failed");
    if (!is_one_regular(C, cfg))
        throw StructureError("commuting_one_regular: produced matrix is not 1-regular");
    return C;
}

}  // namespace bmat
