"""Time-multiplexed click detector with D bins."""
