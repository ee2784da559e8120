#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace asymgeo {

/// Finite ordered sample space. Labels are unique and there is at least one.
class SampleSpace
{
  public:
    explicit SampleSpace(std::vector<std::string> labels)
        : labels_(std::move(labels))
    {
        if (labels_.empty())
            throw DomainError("SampleSpace: at least one outcome is required");
        std::unordered_set<std::string> seen;
        for (const auto& l : labels_) {
            if (!seen.insert(l).second)
                throw DomainError("SampleSpace: duplicate label '" + l + "'");
        }
    }

    /// Space with labels "0", "1", ..., "n-1".
    static std::shared_ptr<const SampleSpace> indexed(std::size_t n)
    {
        std::vector<std::string> labels;
        labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            labels.push_back(std::to_string(i));
        return std::make_shared<const SampleSpace>(std::move(labels));
    }

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    std::ptrdiff_t find(const std::string& label) const
    {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label)
                return static_cast<std::ptrdiff_t>(i);
        return -1;
    }

    friend bool operator==(const SampleSpace& a, const SampleSpace& b)
    {
        return a.labels_ == b.labels_;
    }

  private:
    std::vector<std::string> labels_;
};

using SpacePtr = std::shared_ptr<const SampleSpace>;


inline bool same_space(const SpacePtr& a, const SpacePtr& b)
{
    return a == b || (a && b && *a == *b);
}

inline SpacePtr make_space(std::vector<std::string> labels)
{
    return std::make_shared<const SampleSpace>(std::move(labels));
}

namespace detail {

template <class A, class B>
void require_same_space(const A& a, const B& b, const char* op)
{
    if (!same_space(a.space(), b.space()))
        throw SpaceMismatch(std::string(op) + ": arguments live on different sample spaces");
}

} // namespace detail

/// Nonnegative weights over a finite sample space. Total mass need not be 1.
class Measure
{
  public:
    Measure(SpacePtr space, std::vector<double> weights)
        : space_(std::move(space)), weights_(std::move(weights))
    {
        validate();
    }

    /// Convenience for tests and small computations: indexed labels.
    explicit Measure(std::vector<double> weights)
        : space_(SampleSpace::indexed(weights.size())), weights_(std::move(weights))
    {
        validate();
    }

  private:
    void validate() const
    {
        if (!space_)
            throw DomainError("Measure: null sample space");
        if (weights_.size() != space_->size())
            throw DimensionMismatch("Measure: weight count does not match the sample space");
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            const double w = weights_[i];
            if (std::isnan(w) || !std::isfinite(w))
                throw NotFinite("Measure: weight for '" + space_->label(i) + "' is not finite");
            if (w < 0.0)
                throw NegativeWeight("Measure: negative weight for '" + space_->label(i) + "'");
        }
    }

  public:
    const SpacePtr& space() const noexcept { return space_; }
    std::span<const double> weights() const noexcept { return weights_; }
    const std::vector<double>& weight_vector() const noexcept { return weights_; }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::size_t size() const noexcept { return weights_.size(); }

    double total_mass() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

    bool is_probability(double tol = 1e-12) const { return std::abs(total_mass() - 1.0) <= tol; }

    bool strictly_positive() const
    {
        for (double w : weights_)
            if (!(w > 0.0))
                return false;
        return true;
    }

  private:
    SpacePtr space_;
    std::vector<double> weights_;
};

/// A Measure whose total mass is 1 within 1e-12.
class ProbabilityMeasure : public Measure
{
  public:
    explicit ProbabilityMeasure(Measure m, double tol = 1e-12)
        : Measure(std::move(m))
    {
        if (!is_probability(tol))
            throw DomainError("ProbabilityMeasure: total mass differs from 1");
    }

    ProbabilityMeasure(SpacePtr space, std::vector<double> weights, double tol = 1e-12)
        : ProbabilityMeasure(Measure(std::move(space), std::move(weights)), tol)
    {
    }

    explicit ProbabilityMeasure(std::vector<double> weights, double tol = 1e-12)
        : ProbabilityMeasure(Measure(std::move(weights)), tol)
    {
    }
};

/// Finite real function on a sample space.
class RandomVariable
{
  public:
    RandomVariable(SpacePtr space, std::vector<double> values)
        : space_(std::move(space)), values_(std::move(values))
    {
        validate();
    }

    explicit RandomVariable(std::vector<double> values)
        : space_(SampleSpace::indexed(values.size())), values_(std::move(values))
    {
        validate();
    }

  private:
    void validate() const
    {
        if (!space_)
            throw DomainError("RandomVariable: null sample space");
        if (values_.size() != space_->size())
            throw DimensionMismatch("RandomVariable: value count does not match the sample space");
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!std::isfinite(values_[i]))
                throw NotFinite("RandomVariable: value for '" + space_->label(i) + "' is not finite");
    }

  public:
    const SpacePtr& space() const noexcept { return space_; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& value_vector() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    RandomVariable operator-() const
    {
        std::vector<double> v(values_);
        for (auto& e : v)
            e = -e;
        return {space_, std::move(v)};
    }

    RandomVariable scaled(double s) const
    {
        std::vector<double> v(values_);
        for (auto& e : v)
            e *= s;
        return {space_, std::move(v)};
    }

    friend RandomVariable operator+(const RandomVariable& a, const RandomVariable& b)
    {
        detail::require_same_space(a, b, "RandomVariable +");
        std::vector<double> v(a.values_);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += b.values_[i];
        return {a.space_, std::move(v)};
    }

    friend RandomVariable operator-(const RandomVariable& a, const RandomVariable& b) { return a + (-b); }

    bool is_zero() const
    {
        for (double v : values_)
            if (v != 0.0)
                return false;
        return true;
    }

  private:
    SpacePtr space_;
    std::vector<double> values_;
};

/// Expectation pairing <x, y> = sum_i x_i y_i.
inline double pairing(const RandomVariable& x, const Measure& y)
{
    detail::require_same_space(x, y, "pairing");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * y[i];
    return s;
}

/// Product space labels are "a|b", ordered lexicographically by (i, j).
inline SpacePtr product_space(const SampleSpace& a, const SampleSpace& b)
{
    std::vector<std::string> labels;
    labels.reserve(a.size() * b.size());
    for (const auto& la : a.labels())
        for (const auto& lb : b.labels())
            labels.push_back(la + "|" + lb);
    return make_space(std::move(labels));
}

inline Measure product_measure(const Measure& q, const Measure& p)
{
    std::vector<double> w;
    w.reserve(q.size() * p.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            w.push_back(q[i] * p[j]);
    return {product_space(*q.space(), *p.space()), std::move(w)};
}

inline ProbabilityMeasure normalize(const Measure& y)
{
    const double mass = y.total_mass();
    if (!(mass > 0.0))
        throw ZeroMass("normalize: total mass is zero");
    std::vector<double> w(y.weight_vector());
    for (auto& e : w)
        e /= mass;
    // Dividing by the sum can leave a few ulps of slack; the constructor
    // tolerance absorbs it.
    return ProbabilityMeasure(Measure(y.space(), std::move(w)), 1e-12);
}

/// Marginals of a measure on a product space built by product_space(a, b).
inline std::pair<std::vector<double>, std::vector<double>>
marginals(const Measure& w, std::size_t rows, std::size_t cols)
{
    if (w.size() != rows * cols)
        throw DimensionMismatch("marginals: product size does not match");
    std::vector<double> left(rows, 0.0), right(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            left[i] += w[i * cols + j];
            right[j] += w[i * cols + j];
        }
    return {std::move(left), std::move(right)};
}

} // namespace asymgeo
