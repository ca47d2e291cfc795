#pragma once

#include "qflab/numeric.hpp"

#include <compare>
#include <string>

namespace qflab {

// A place of Q: the real place or a finite prime. Q has no complex places.
class Place {
public:
    static Place real() { return Place(Int(0), true); }
    static Place finite(Int p)
    {
        if (!is_prime(p)) throw domain_error("Place::finite: not a prime");
        return Place(std::move(p), false);
    }

    bool is_real() const { return real_; }
    bool is_finite() const { return !real_; }
    const Int& prime() const
    {
        if (real_) throw domain_error("Place::prime: real place");
        return p_;
    }

    bool operator==(const Place& o) const { return real_ == o.real_ && p_ == o.p_; }
    // Real place sorts first, then primes in increasing order.
    bool operator<(const Place& o) const
    {
        if (real_ != o.real_) return real_;
        return p_ < o.p_;
    }

    std::string str() const { return real_ ? "real" : p_.get_str(); }

private:
    Place(Int p, bool real) : p_(std::move(p)), real_(real) {}
    Int p_;
    bool real_;
};

// Selects a completion of Q or the global field itself.
class Field {
public:
    static Field global() { return Field(); }
    static Field at(Place v)
    {
        Field f;
        f.local_ = true;
        f.place_ = std::move(v);
        return f;
    }

    bool is_global() const { return !local_; }
    bool is_local() const { return local_; }
    const Place& place() const
    {
        if (!local_) throw domain_error("Field::place: global field");
        return place_;
    }

    std::string str() const { return local_ ? place_.str() : "global"; }

private:
    Field() : place_(Place::real()) {}
    bool local_ = false;
    Place place_;
};

} // namespace qflab
