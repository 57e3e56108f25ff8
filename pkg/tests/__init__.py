# Test package initialization file
