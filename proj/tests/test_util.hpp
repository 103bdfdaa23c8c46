#pragma once

#include <cstdlib>
#include <string>
#include <unistd.h>

// Unique scratch path for test artifacts (the caller creates the file).
inline std::string make_temp_path(const std::string& suffix) {
    std::string base = "/tmp/muagg-test-XXXXXX";
    int fd = mkstemp(base.data());
    if (fd >= 0) {
        close(fd);
        unlink(base.c_str());
    }
    return base + suffix;
}
