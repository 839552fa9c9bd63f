# workprobe tests
