# Tests for stl-rosi-monitor
