# Utils package for star-covers
