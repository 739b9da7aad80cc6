#include "wpsk/real.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace wpsk {

namespace {

struct PrecisionInit {
    PrecisionInit() { Real::default_precision(kDefaultDigits); }
};
const PrecisionInit precision_init{};

}  // namespace

unsigned working_digits() { return Real::default_precision(); }

void set_working_digits(unsigned digits10) { Real::default_precision(digits10); }

PrecisionGuard::PrecisionGuard(unsigned digits10) : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

Real pi_value() { return 4 * atan(Real(1)); }

Real euler_value() { return exp(Real(1)); }

Real ln2_value() { return log(Real(2)); }

Real ln10_value() { return log(Real(10)); }

Real log_sum_exp(std::span<const Real> log_terms) {
    Real best = neg_inf();
    for (const Real& t : log_terms) best = (std::max)(best, t);
    if (isinf(best) && best < 0) return best;
    Real acc = 0;
    for (const Real& t : log_terms) {
        if (isinf(t) && t < 0) continue;
        acc += exp(t - best);
    }
    return best + log(acc);
}

unsigned parallel_threads() {
    static const unsigned n = [] {
        if (const char* env = std::getenv("WPSK_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<unsigned>(v);
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1u : hw;
    }();
    return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    const unsigned workers = std::min<std::size_t>(parallel_threads(), count);
    if (workers <= 1) {
        fn(0, count);
        return;
    }
    const unsigned digits = working_digits();
    std::atomic<std::size_t> next{0};
    const std::size_t chunk = std::max<std::size_t>(1, count / (4 * workers));
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto body = [&] {
        set_working_digits(digits);
        for (;;) {
            std::size_t begin = next.fetch_add(chunk);
            if (begin >= count) break;
            std::size_t end = std::min(count, begin + chunk);
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(count);
                break;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned i = 0; i + 1 < workers; ++i) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace wpsk
