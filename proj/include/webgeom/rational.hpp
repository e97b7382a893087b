#ifndef WEBGEOM_RATIONAL_HPP
#define WEBGEOM_RATIONAL_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace webgeom {

/// Base error type for the whole library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// An element of Q(i), kept exact. Both parts are GMP rationals in canonical
/// form (lowest terms, positive denominator), which GMP maintains for us as
/// long as every raw-constructed value is canonicalized once.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}
    GaussianRational(mpq_class re) : re_(std::move(re)), im_(0) {}
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}
    GaussianRational(long num, long den) : re_(num, den), im_(0) {
        if (den == 0) throw error("rational with zero denominator");
        re_.canonicalize();
    }

    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_integer() const { return im_ == 0 && re_.get_den() == 1; }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    /// re^2 + im^2, a nonnegative rational; zero iff the value is zero.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw error("division by zero in Q(i)");
        mpq_class n = o.norm();
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
        mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    /// Plain diagnostic form: "0", "3/2", "i", "-2*i", "1/2+i", "1-3*i".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        if (re_ != 0) out = re_.get_str();
        if (im_ != 0) {
            if (im_ > 0 && !out.empty()) out += "+";
            if (im_ == -1)
                out += "-i";
            else if (im_ == 1)
                out += "i";
            else
                out += im_.get_str() + "*i";
        }
        return out;
    }

private:
    mpq_class re_, im_;
};

}  // namespace webgeom

#endif
