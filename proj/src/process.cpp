// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#include "oval/process.hpp"

#include "oval/util.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

namespace oval {

namespace {

// Writes stdin_text to an unlinked temp file and returns a read fd, so the
// child never blocks on a pipe while we drain its output.
int make_stdin_fd(const std::string& text) {
    char tmpl[] = "/tmp/oval-stdin-XXXXXX";
    int fd = ::mkstemp(tmpl);
    if (fd < 0)
        return -1;
    ::unlink(tmpl);
    size_t off = 0;
    while (off < text.size()) {
        ssize_t n = ::write(fd, text.data() + off, text.size() - off);
        if (n <= 0) {
            ::close(fd);
            return -1;
        }
        off += static_cast<size_t>(n);
    }
    ::lseek(fd, 0, SEEK_SET);
    return fd;
}

} // namespace

ProcessResult run_process(const std::vector<std::string>& argv,
                          const ProcessOptions& opts) {
    if (argv.empty())
        throw Error("run_process: empty argv");

    int out_pipe[2] = {-1, -1};
    if (opts.capture_output && ::pipe(out_pipe) != 0)
        throw Error(std::string("pipe: ") + std::strerror(errno));

    int stdin_fd = -1;
    if (opts.stdin_text) {
        stdin_fd = make_stdin_fd(*opts.stdin_text);
        if (stdin_fd < 0) {
            if (opts.capture_output) {
                ::close(out_pipe[0]);
                ::close(out_pipe[1]);
            }
            throw Error("cannot stage stdin data");
        }
    }

    pid_t pid = ::fork();
    if (pid < 0) {
        if (opts.capture_output) {
            ::close(out_pipe[0]);
            ::close(out_pipe[1]);
        }
        if (stdin_fd >= 0)
            ::close(stdin_fd);
        throw Error(std::string("fork: ") + std::strerror(errno));
    }

    if (pid == 0) {
        if (!opts.cwd.empty() && ::chdir(opts.cwd.c_str()) != 0) {
            std::fprintf(stderr, "oval: cannot chdir to %s: %s\n",
                         opts.cwd.c_str(), std::strerror(errno));
            std::_Exit(127);
        }
        for (const auto& [name, value] : opts.env)
            ::setenv(name.c_str(), value.c_str(), 1);
        if (stdin_fd >= 0) {
            ::dup2(stdin_fd, STDIN_FILENO);
            ::close(stdin_fd);
        }
        if (opts.capture_output) {
            ::close(out_pipe[0]);
            ::dup2(out_pipe[1], STDOUT_FILENO);
            ::dup2(out_pipe[1], STDERR_FILENO);
            ::close(out_pipe[1]);
        }
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& a : argv)
            cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        ::execvp(cargv[0], cargv.data());
        std::fprintf(stderr, "oval: cannot execute %s: %s\n", cargv[0],
                     std::strerror(errno));
        std::_Exit(127);
    }

    if (stdin_fd >= 0)
        ::close(stdin_fd);

    ProcessResult result;
    if (opts.capture_output) {
        ::close(out_pipe[1]);
        char buf[4096];
        ssize_t n;
        while ((n = ::read(out_pipe[0], buf, sizeof buf)) > 0)
            result.output.append(buf, static_cast<size_t>(n));
        ::close(out_pipe[0]);
    }

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    else if (WIFSIGNALED(status))
        result.exit_code = 128 + WTERMSIG(status);
    else
        result.exit_code = 127;
    return result;
}

} // namespace oval
