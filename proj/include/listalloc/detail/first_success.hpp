#pragma once

#include <exception>
#include <future>
#include <vector>

namespace listalloc {

template <class Member, class Result>
std::optional<Result> first_success(const std::function<std::optional<Member>()>& next,
                                    const std::function<std::optional<Result>(const Member&)>& solve,
                                    int jobs)
{
    if (jobs <= 1) {
        while (auto member = next())
            if (auto result = solve(*member))
                return result;
        return std::nullopt;
    }

    // Batches of `jobs` members; within a batch the earliest decisive
    // outcome wins, which is what the sequential sweep would report.
    while (true) {
        std::vector<Member> batch;
        while (static_cast<int>(batch.size()) < jobs) {
            auto member = next();
            if (!member)
                break;
            batch.push_back(std::move(*member));
        }
        if (batch.empty())
            return std::nullopt;
        std::vector<std::future<std::optional<Result>>> futures;
        for (const auto& m : batch)
            futures.push_back(std::async(std::launch::async, [&solve, &m] { return solve(m); }));
        std::exception_ptr first_error;
        std::optional<Result> found;
        bool decided = false;
        for (auto& f : futures) {
            try {
                auto r = f.get();
                if (!decided && r) {
                    found = std::move(r);
                    decided = true;
                }
            }
            catch (...) {
                if (!decided) {
                    first_error = std::current_exception();
                    decided = true;
                }
            }
        }
        if (first_error)
            std::rethrow_exception(first_error);
        if (found)
            return found;
    }
}

} // namespace listalloc
