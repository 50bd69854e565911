#include "growthcert/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace growthcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conjugate_exponent(double p) {
    if (p == 1.0) return kInf;
    if (p == kInf) return 1.0;
    return p / (p - 1.0);
}

double mixed_norm(const TruncatedSequence& f, double p, NormKind state) {
    std::vector<Complex> norms(f.length());
    for (std::size_t k = 0; k < f.length(); ++k) norms[k] = vec_norm(f.at(k), state);
    return vec_norm(norms, p);
}

void require_same_shape(const TruncatedSequence& a, const TruncatedSequence& b) {
    if (a.dim() != b.dim() || a.length() != b.length()) {
        throw Error(ErrorKind::DomainError, "sequence shapes differ");
    }
}

}  // namespace

SpaceSpec SpaceSpec::lp(double p, NormKind state) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::InvalidParameter, "l^p space requires 1 <= p < inf");
    }
    return {Kind::Lp, p, state};
}

double SpaceSpec::exponent() const noexcept { return kind == Kind::Lp ? p : kInf; }

std::string SpaceSpec::label() const {
    switch (kind) {
        case Kind::Lp: {
            std::string s = std::to_string(p);
            s.erase(s.find_last_not_of('0') + 1);
            if (s.back() == '.') s.pop_back();
            return "lp:" + s;
        }
        case Kind::LInfty: return "linf";
        case Kind::C0: return "c0";
    }
    return "?";
}

SpaceSpec SpaceSpec::parse(const std::string& text) {
    if (text == "linf") return linf();
    if (text == "c0") return c0();
    if (text.rfind("lp:", 0) == 0) {
        std::size_t used = 0;
        double p = 0.0;
        try {
            p = std::stod(text.substr(3), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size() - 3) {
            throw Error(ErrorKind::InvalidParameter, "bad space exponent in '" + text + "'");
        }
        return lp(p);
    }
    throw Error(ErrorKind::InvalidParameter, "unknown space '" + text + "' (expected lp:<p>, linf or c0)");
}

TruncatedSequence::TruncatedSequence(std::size_t dim, std::size_t last_index)
    : dim_(dim), length_(last_index + 1), data_(dim * (last_index + 1)) {
    if (dim == 0) throw Error(ErrorKind::InvalidParameter, "sequence dimension must be >= 1");
}

bool TruncatedSequence::first_is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(dim_),
                       [](Complex c) { return c == Complex{}; });
}

void TruncatedSequence::validate() const {
    if (!first_is_zero()) throw Error(ErrorKind::InvalidSequence, "first entry f_0 must be 0");
    for (const auto& c : data_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw Error(ErrorKind::InvalidSequence, "sequence entries must be finite");
        }
    }
}

TruncatedSequence TruncatedSequence::padded(std::size_t new_last_index) const {
    if (new_last_index < last_index()) throw Error(ErrorKind::DomainError, "padding cannot shorten a sequence");
    TruncatedSequence out(dim_, new_last_index);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    return out;
}

TruncatedSequence& TruncatedSequence::operator+=(const TruncatedSequence& rhs) {
    require_same_shape(*this, rhs);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

TruncatedSequence& TruncatedSequence::operator*=(Complex s) {
    for (auto& c : data_) c *= s;
    return *this;
}

double seq_norm(const TruncatedSequence& f, const SpaceSpec& space) {
    return mixed_norm(f, space.exponent(), space.state_norm);
}

double dual_seq_norm(const TruncatedSequence& h, const SpaceSpec& space) {
    return mixed_norm(h, conjugate_exponent(space.exponent()), dual_norm(space.state_norm));
}

Complex dual_pair(const TruncatedSequence& h, const TruncatedSequence& f) {
    require_same_shape(h, f);
    Complex s{};
    const auto hv = h.flat();
    const auto fv = f.flat();
    for (std::size_t i = 0; i < hv.size(); ++i) s += std::conj(hv[i]) * fv[i];
    return s;
}

TruncatedSequence random_unit(const SpaceSpec& space, std::size_t dim, std::size_t last_index, std::uint64_t seed) {
    if (last_index < 1) throw Error(ErrorKind::InvalidParameter, "random_unit needs N >= 1");
    TruncatedSequence f(dim, last_index);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (std::size_t k = 1; k <= last_index; ++k)
        for (auto& c : f.at(k)) c = Complex(normal(rng), normal(rng));
    f *= 1.0 / seq_norm(f, space);
    return f;
}

double max_abs_diff(const TruncatedSequence& a, const TruncatedSequence& b) {
    require_same_shape(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.flat().size(); ++i) m = std::max(m, std::abs(a.flat()[i] - b.flat()[i]));
    return m;
}

}  // namespace growthcert
