// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#include "oval/cli.hpp"

int main(int argc, char* argv[]) { return oval::dispatch(argc, argv); }
