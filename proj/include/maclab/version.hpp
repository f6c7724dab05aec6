#pragma once

#define MACLAB_VERSION "0.1.0"
