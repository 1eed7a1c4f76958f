#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <queue>
#include <thread>
#include <vector>

namespace sasaki::app {

// Fixed-size pool of worker threads consuming a FIFO of independent jobs.
class WorkerPool {
public:
    explicit WorkerPool(int threads = 0);
    ~WorkerPool();
    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    void submit(std::function<void()> job);
    void wait();  // blocks until the queue is drained and all workers are idle
    int size() const { return static_cast<int>(workers_.size()); }

private:
    void run();

    std::vector<std::thread> workers_;
    std::queue<std::function<void()>> jobs_;
    std::mutex mu_;
    std::condition_variable cv_, idle_;
    int busy_ = 0;
    bool stop_ = false;
};

}  // namespace sasaki::app
