data = b'# raw bytes'
