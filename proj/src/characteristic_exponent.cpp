#include "levymoduli/characteristic_exponent.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "levymoduli/errors.hpp"

namespace levymoduli {

CharacteristicExponent CharacteristicExponent::canonical_stable(double beta) {
    if (!(beta > 1.0 && beta <= 2.0)) {
        throw DomainError("canonical stable index must lie in (1, 2]");
    }
    CharacteristicExponent e;
    e.family_ = Family::CanonicalStable;
    e.tail_ = {1.0, beta, 0.0};
    return e;
}

CharacteristicExponent CharacteristicExponent::brownian_half() {
    CharacteristicExponent e;
    e.family_ = Family::BrownianHalf;
    e.tail_ = {0.5, 2.0, 0.0};
    return e;
}

CharacteristicExponent CharacteristicExponent::scaled_stable(double c, double beta) {
    if (!(c > 0.0)) throw DomainError("stable scale must be positive");
    if (!(beta > 1.0 && beta <= 2.0)) {
        throw DomainError("stable index must lie in (1, 2]");
    }
    CharacteristicExponent e;
    e.family_ = Family::ScaledStable;
    e.tail_ = {c, beta, 0.0};
    return e;
}

CharacteristicExponent CharacteristicExponent::tabulated(
    std::vector<std::pair<double, double>> knots, double tail_exponent) {
    if (knots.size() < 2) throw DomainError("tabulated exponent needs at least two knots");
    if (!(tail_exponent > 1.0)) {
        throw DomainError("tail exponent must exceed 1 (local-time existence)");
    }
    std::sort(knots.begin(), knots.end());
    CharacteristicExponent e;
    e.family_ = Family::Tabulated;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i].first < knots[i + 1].first)) {
            throw DomainError("tabulated lambda grid must be strictly increasing");
        }
    }
    std::size_t start = 0;
    if (knots.front().first == 0.0) {
        if (knots.front().second != 0.0) {
            throw DomainError("psi(0) must be 0");
        }
        e.has_origin_anchor_ = true;
        start = 1;
    }
    for (std::size_t i = start; i < knots.size(); ++i) {
        const auto& [lam, psi] = knots[i];
        if (!(lam > 0.0) || !(psi > 0.0)) {
            throw DomainError("tabulated knots must have positive lambda and psi");
        }
        e.log_lambda_.push_back(std::log(lam));
        e.log_psi_.push_back(std::log(psi));
    }
    if (e.log_lambda_.size() < 2) {
        throw DomainError("tabulated exponent needs at least two positive knots");
    }
    e.first_segment_slope_ = (e.log_psi_[1] - e.log_psi_[0]) /
                             (e.log_lambda_[1] - e.log_lambda_[0]);
    const double last_lambda = std::exp(e.log_lambda_.back());
    const double last_psi = std::exp(e.log_psi_.back());
    e.tail_ = {last_psi / std::pow(last_lambda, tail_exponent), tail_exponent, last_lambda};
    return e;
}

CharacteristicExponent CharacteristicExponent::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open exponent CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("lambda,psi", 0) != 0) {
        throw DomainError("exponent CSV must start with header 'lambda,psi'");
    }
    std::vector<std::pair<double, double>> knots;
    double tail_exponent = 0.0;
    bool have_tail = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("#tail_exponent=", 0) == 0) {
            tail_exponent = std::stod(line.substr(std::string("#tail_exponent=").size()));
            have_tail = true;
            continue;
        }
        std::istringstream row(line);
        double lam, psi;
        char comma;
        if (!(row >> lam >> comma >> psi) || comma != ',') {
            throw DomainError("malformed exponent CSV row: " + line);
        }
        knots.emplace_back(lam, psi);
    }
    if (!have_tail) throw DomainError("exponent CSV missing #tail_exponent metadata line");
    return tabulated(std::move(knots), tail_exponent);
}

double CharacteristicExponent::psi(double lambda) const {
    if (lambda < 0.0) throw DomainError("psi is represented on lambda >= 0");
    if (lambda == 0.0) return 0.0;
    if (family_ != Family::Tabulated) {
        return tail_.coef * std::pow(lambda, tail_.exponent);
    }
    const double ll = std::log(lambda);
    if (ll >= log_lambda_.back()) {
        return tail_.coef * std::pow(lambda, tail_.exponent);
    }
    if (ll < log_lambda_.front()) {
        if (!has_origin_anchor_) {
            throw DomainError("lambda below first tabulated knot with no origin anchor");
        }
        // Power continuation toward 0 with the first segment's log-log slope.
        return std::exp(log_psi_.front() + first_segment_slope_ * (ll - log_lambda_.front()));
    }
    const auto it = std::upper_bound(log_lambda_.begin(), log_lambda_.end(), ll);
    const std::size_t hi = static_cast<std::size_t>(it - log_lambda_.begin());
    const std::size_t lo = hi - 1;
    const double w = (ll - log_lambda_[lo]) / (log_lambda_[hi] - log_lambda_[lo]);
    return std::exp(log_psi_[lo] * (1.0 - w) + log_psi_[hi] * w);
}

std::string CharacteristicExponent::describe() const {
    std::ostringstream out;
    switch (family_) {
        case Family::CanonicalStable:
            out << "canonical-stable(beta=" << tail_.exponent << ")";
            break;
        case Family::BrownianHalf:
            out << "brownian-half";
            break;
        case Family::ScaledStable:
            out << "scaled-stable(c=" << tail_.coef << ",beta=" << tail_.exponent << ")";
            break;
        case Family::Tabulated:
            out << "tabulated(knots=" << log_lambda_.size()
                << ",tail=" << tail_.exponent << ")";
            break;
    }
    return out.str();
}

}  // namespace levymoduli
