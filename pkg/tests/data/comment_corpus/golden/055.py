s = 'line1\nline2'
