s = 'emoji 🙂 # tekst'
