# Utilities - SVG plots
