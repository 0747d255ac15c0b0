# Core: settings, constants, logging
