#pragma once

#include "workspace.hpp"

#include <memory>
#include <string>

namespace glyphmcda {

/// HTTP adapter over the document API. Every response body is exactly what
/// the matching api:: call returns.
class Service {
public:
    explicit Service(Workspace& ws);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds `host:port` (port 0 picks a free one) and returns the bound
    /// port, or -1 on failure.
    int bind(const std::string& host, int port);

    /// Serves until stop() is called. Requires a successful bind().
    bool run();

    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace glyphmcda
