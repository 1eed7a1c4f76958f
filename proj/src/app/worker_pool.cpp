#include "sasaki/app/worker_pool.hpp"

#include "sasaki/parallel.hpp"

namespace sasaki::app {

WorkerPool::WorkerPool(int threads) {
    if (threads <= 0) threads = default_threads();
    for (int i = 0; i < threads; ++i) workers_.emplace_back([this] { run(); });
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard<std::mutex> lk(mu_);
        stop_ = true;
    }
    cv_.notify_all();
    for (auto& w : workers_) w.join();
}

void WorkerPool::submit(std::function<void()> job) {
    {
        std::lock_guard<std::mutex> lk(mu_);
        jobs_.push(std::move(job));
    }
    cv_.notify_one();
}

void WorkerPool::wait() {
    std::unique_lock<std::mutex> lk(mu_);
    idle_.wait(lk, [this] { return jobs_.empty() && busy_ == 0; });
}

void WorkerPool::run() {
    for (;;) {
        std::function<void()> job;
        {
            std::unique_lock<std::mutex> lk(mu_);
            cv_.wait(lk, [this] { return stop_ || !jobs_.empty(); });
            if (stop_ && jobs_.empty()) return;
            job = std::move(jobs_.front());
            jobs_.pop();
            ++busy_;
        }
        job();
        {
            std::lock_guard<std::mutex> lk(mu_);
            --busy_;
        }
        idle_.notify_all();
    }
}

}  // namespace sasaki::app
