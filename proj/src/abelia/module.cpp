#include "abelia/module.hpp"

#include "abelia/smith.hpp"

namespace abelia {

std::string CohomologyModule::str() const {
    if (is_zero()) return "0";
    std::string out;
    auto append = [&out](const std::string& part) {
        if (!out.empty()) out += " + ";
        out += part;
    };
    if (free_rank > 0) {
        std::string part = "C[[h]]";
        if (free_rank > 1) part += "^" + std::to_string(free_rank);
        append(part);
    }
    for (const auto& [a, m] : torsion) {
        std::string part = "C[h]/h";
        if (a > 1) part += "^" + std::to_string(a);
        if (m > 1) part = "(" + part + ")^" + std::to_string(m);
        append(part);
    }
    return out;
}

CohomologyModule complex_cohomology_over_pid(const HbarPolyMatrix& d_prev, const HbarPolyMatrix& d_next) {
    const std::size_t n = d_next.cols() ? d_next.cols() : d_prev.rows();
    if (d_prev.cols() > 0 && d_prev.rows() != n)
        throw Error(ErrorKind::Internal, "complex cohomology: incoming map has wrong codomain");
    if (d_next.cols() > 0 && d_prev.cols() > 0) {
        HbarPolyMatrix comp = d_next * d_prev;
        if (!comp.is_zero())
            throw Error(ErrorKind::Internal, "complex cohomology: d_next * d_prev is nonzero");
    }

    // Kernel of d_next as rows >= r of W applied coordinates.
    std::size_t rank_next = 0;
    HbarPolyMatrix coords;  // kernel coordinates of the columns of d_prev
    std::size_t ker_dim = n;
    if (d_next.rows() > 0 && d_next.cols() > 0) {
        auto s = smith_normal_form(d_next);
        rank_next = s.diagonal().size();
        ker_dim = n - rank_next;
        if (d_prev.cols() > 0) {
            HbarPolyMatrix wd = s.W * d_prev;
            // components below the rank must vanish because the composite is zero
            for (std::size_t i = 0; i < rank_next; ++i)
                for (std::size_t c = 0; c < wd.cols(); ++c)
                    if (!wd(i, c).is_zero())
                        throw Error(ErrorKind::Internal, "complex cohomology: image escapes the kernel");
            coords = HbarPolyMatrix(ker_dim, wd.cols());
            for (std::size_t i = 0; i < ker_dim; ++i)
                for (std::size_t c = 0; c < wd.cols(); ++c) coords(i, c) = wd(rank_next + i, c);
        }
    } else if (d_prev.cols() > 0) {
        coords = d_prev;  // d_next absent: the whole middle term is the kernel
    }

    CohomologyModule out;
    if (ker_dim == 0) return out;
    if (coords.cols() == 0) {
        out.free_rank = static_cast<unsigned>(ker_dim);
        return out;
    }

    auto sx = smith_normal_form(coords);
    std::vector<HbarPoly> divisors = sx.diagonal();
    out.free_rank = static_cast<unsigned>(ker_dim - divisors.size());
    for (const auto& d : divisors) {
        int a = d.valuation();
        if (a >= 1) out.torsion[static_cast<unsigned>(a)] += 1;
    }
    return out;
}

}  // namespace abelia
