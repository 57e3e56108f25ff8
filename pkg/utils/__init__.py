# Utils package for the framewidth wavelet frame and n-term width tools
