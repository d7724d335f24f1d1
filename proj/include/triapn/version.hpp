#pragma once

#define TRIAPN_VERSION "0.1.0"
